#pragma once

#include <string>

#include "lefschetz/word.hpp"

namespace lefschetz {

// Versioned JSON monodromy format. Top-level fields: format_version, genus,
// letters, ledger {n, sigma}, flags {is_relator, is_fiber_sum, base_name},
// declared_maps (matrix + axiom table per referenced map), provenance.
// Parsing is schema-strict (unknown fields are rejected); semantic
// invariants (letter count vs ledger, homology identity) are checked by the
// verify command, not by the parser, so damaged files can be diagnosed.
inline constexpr int kMonodromyFormatVersion = 1;

std::string write_monodromy(const Factorization& w);
Factorization read_monodromy(const std::string& text);

void save_monodromy(const Factorization& w, const std::string& path);
Factorization load_monodromy(const std::string& path);

}  // namespace lefschetz
