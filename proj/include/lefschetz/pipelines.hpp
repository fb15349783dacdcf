#pragma once

#include <optional>

#include "lefschetz/word.hpp"

namespace lefschetz {

enum class PipelineMode { Explicit, Ledger };
enum class WalkDirection { Down, Up };

inline constexpr std::size_t kDefaultLetterBudget = 1'000'000;

// Letter budget for explicit-mode pipelines; the environment variable
// LEFSCHETZ_MAX_LETTERS overrides the built-in default.
std::size_t default_letter_budget();

// The hyperelliptic relator (c_1..c_{2g} c_{2g+1}^2 c_{2g}..c_1)^2 as a base
// fibration: n = 8g+4, sigma = -4(g+1), hence K^2 = 4g-4 and chi_f = g.
Factorization hyperelliptic_base(int genus);
Factorization hyperelliptic_base(SurfacePtr surface);

struct ClosedForm {
    BigInt k_sq;   // K^2_n
    BigInt chi4;   // 4 * chi_n (integral even for n < 2)
    Rat lambda;    // K^2_n / chi_n
};

// K^2_n = 2^n K^2_0 + 2^n r [(h+1)^n - 1] h
// 4 chi_n = 2^n (4 chi_0) + 2^n r [(h+1)^n - 1] (h+1)
ClosedForm closed_form_invariants(const BigInt& k0_sq, const BigInt& chi0, const BigInt& r, int h, int n);

// Limit of the slope sequence: 4h/(h+1), reduced.
Rat slope_limit(int h);

// State of the doubling pipeline: the current word (explicit mode), its
// ledger, the designated curve, and the multiplicity r_i of its trailing
// twist power. Invariant: r_{i+1} = 2(h+1) r_i, and in explicit mode the
// literal count of the designated curve in W_{i+1} is (2h+2) r_i.
struct PipelineState {
    std::optional<Factorization> word;  // absent in ledger mode
    InvariantLedger ledger;
    std::string curve = "c1";
    BigInt r = 1;
    int index = 0;
    int h = 1;
    PipelineMode mode = PipelineMode::Explicit;
    std::size_t budget = kDefaultLetterBudget;
};

// One step: gather the trailing twist power, conjugate the word by phi1 and
// phi2 (declared maps taking the designated curve to d_{h+1} and e_{h+1}),
// concatenate as a twisted self fiber sum, commute the d-twist block right,
// interleave to (DE)^{r_i}, and trade each DE for the odd chain block.
PipelineState sequence_step(const PipelineState& s, const std::string& phi1, const std::string& phi2);

struct StepReport {
    int index = 0;
    BigInt r;
    BigInt n;
    BigInt sigma;
    SlopeReport report;
};

struct SequenceOptions {
    std::string curve = "c1";
    int h = 1;
    BigInt r = 1;
    int steps = 0;
    PipelineMode mode = PipelineMode::Explicit;
    std::size_t budget = kDefaultLetterBudget;
    // declared-map names for phi1/phi2; empty = build them from
    // symplectic_extension with axioms curve -> d_{h+1} / e_{h+1}
    std::string phi1;
    std::string phi2;
};

struct SequenceResult {
    std::vector<StepReport> reports;                 // i = 0..steps
    std::optional<Factorization> final_word;         // explicit mode
};

// Runs `steps` doubling steps from the base relator. In explicit mode every
// intermediate word is verified against the homology identity and the
// ledger is cross-checked against the closed forms; any failure throws
// verify_error. Exceeding the letter budget throws budget_error.
SequenceResult slope_sequence(const Factorization& base, const SequenceOptions& opt);

struct CertificateSet {
    bool homology_identity = false;
    bool full_chain_presence = false;
    bool h1_trivial = false;
    bool simply_connected = false;  // chain presence && trivial H1 quotient
    bool minimal = false;           // constructed as a fiber sum
    bool slope_bounds = false;      // 2 < lambda < 2 + (4g-8)/2^n, strict
    bool word_certificates_computed = false;  // explicit mode only
    std::vector<std::string> failures;

    bool all_pass() const { return failures.empty(); }
};

struct FamilyResult {
    std::optional<Factorization> word;  // the fiber sum W_n W_n^psi
    CertificateSet certificates;
    SlopeReport report;
    std::vector<StepReport> steps;
};

// The simply connected minimal family: runs the h = r = 1 doubling sequence
// from the hyperelliptic base with the explicit twist-word maps
// phi1 = U D_2 C_1 U and phi2 = U E_2 C_1 U, then forms the twisted self
// fiber sum with psi (c_1 -> c_4, c_2 -> c_5). All certificates must pass;
// a failure throws verify_error.
FamilyResult simply_connected_family(int genus, int steps, PipelineMode mode,
                                     std::size_t budget = kDefaultLetterBudget);

struct WalkResult {
    Factorization word;
    SlopeReport before;
    SlopeReport after;
};

// Slope walk by lantern substitution. Down: fiber-sum three conjugated
// copies sending the designated curve to x, y, z, gather the letters X Y Z
// adjacent, and apply the forward lantern (slope strictly decreases). Up:
// four copies onto a1..a4 and the inverse lantern (slope strictly
// increases). Strictness is verified.
WalkResult lantern_walk(const Factorization& w, const std::string& curve, WalkDirection dir);

}  // namespace lefschetz
