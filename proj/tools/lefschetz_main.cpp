#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lefschetz/monodromy_io.hpp"
#include "lefschetz/pipelines.hpp"
#include "lefschetz/snf.hpp"

namespace {

using namespace lefschetz;

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

std::string render_text(const Table& t)
{
    std::vector<std::size_t> width(t.headers.size());
    for (std::size_t j = 0; j < t.headers.size(); ++j)
        width[j] = t.headers[j].size();
    for (const auto& row : t.rows)
        for (std::size_t j = 0; j < row.size(); ++j)
            width[j] = std::max(width[j], row[j].size());
    std::ostringstream out;
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j)
                out << "  ";
            out << std::string(width[j] - row[j].size(), ' ') << row[j];
        }
        out << "\n";
    };
    emit_row(t.headers);
    for (const auto& row : t.rows)
        emit_row(row);
    return out.str();
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render_csv(const Table& t)
{
    std::ostringstream out;
    for (std::size_t j = 0; j < t.headers.size(); ++j)
        out << (j ? "," : "") << csv_escape(t.headers[j]);
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? "," : "") << csv_escape(row[j]);
        out << "\n";
    }
    return out.str();
}

std::string render_md(const Table& t)
{
    std::ostringstream out;
    out << "|";
    for (const auto& h : t.headers)
        out << " " << h << " |";
    out << "\n|";
    for (std::size_t j = 0; j < t.headers.size(); ++j)
        out << " --- |";
    out << "\n";
    for (const auto& row : t.rows) {
        out << "|";
        for (const auto& v : row)
            out << " " << v << " |";
        out << "\n";
    }
    return out.str();
}

std::string render_json(const Table& t)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json obj;
        for (std::size_t j = 0; j < t.headers.size(); ++j)
            obj[t.headers[j]] = row[j];
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string render(const Table& t, const std::string& format)
{
    if (format == "csv")
        return render_csv(t);
    if (format == "md")
        return render_md(t);
    if (format == "json")
        return render_json(t);
    return render_text(t);
}

void write_output(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw usage_error("cannot open for writing: " + out_path);
    out << text;
}

std::vector<std::string> report_row(const SlopeReport& r)
{
    return {r.e.str(),   r.k_sq.str(),          r.chi_f.str(),
            rat_string(r.lambda), rat_decimal(r.lambda, 6)};
}

Table sequence_table(const std::vector<StepReport>& steps)
{
    Table t;
    t.headers = {"i", "r_i", "n", "sigma", "e", "K2", "chi_f", "lambda", "lambda_dec"};
    for (const auto& s : steps) {
        std::vector<std::string> row{std::to_string(s.index), s.r.str(), s.n.str(), s.sigma.str()};
        auto rest = report_row(s.report);
        row.insert(row.end(), rest.begin(), rest.end());
        t.rows.push_back(std::move(row));
    }
    return t;
}

// "3", "3,5", "2-4", and mixes of those
std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            throw CLI::ValidationError("empty entry in list: " + text);
        auto dash = item.find('-', 1);
        try {
            if (dash == std::string::npos) {
                out.push_back(std::stoi(item));
            } else {
                int lo = std::stoi(item.substr(0, dash));
                int hi = std::stoi(item.substr(dash + 1));
                if (hi < lo)
                    throw CLI::ValidationError("descending range: " + item);
                for (int v = lo; v <= hi; ++v)
                    out.push_back(v);
            }
        } catch (const std::invalid_argument&) {
            throw CLI::ValidationError("not an integer list: " + text);
        } catch (const std::out_of_range&) {
            throw CLI::ValidationError("value out of range: " + text);
        }
    }
    if (out.empty())
        throw CLI::ValidationError("empty list: " + text);
    return out;
}

PipelineMode parse_mode(const std::string& s)
{
    return s == "ledger" ? PipelineMode::Ledger : PipelineMode::Explicit;
}

int run_base(int g, const std::string& format, const std::string& out_path, const std::string& save_path)
{
    Factorization base = hyperelliptic_base(g);
    SlopeReport r = slope_report(base.ledger());
    Table t;
    t.headers = {"g", "n", "sigma", "e", "K2", "chi_f", "lambda", "lambda_dec"};
    std::vector<std::string> row{std::to_string(g), r.n.str(), r.sigma.str()};
    auto rest = report_row(r);
    row.insert(row.end(), rest.begin(), rest.end());
    t.rows.push_back(std::move(row));
    write_output(render(t, format), out_path);
    if (!save_path.empty())
        save_monodromy(base, save_path);
    return 0;
}

int run_thm124(int g, int h, long long r, int n, const std::string& mode, std::size_t budget,
               const std::string& format, const std::string& out_path, const std::string& save_path)
{
    SequenceOptions opt;
    opt.h = h;
    opt.r = r;
    opt.steps = n;
    opt.mode = parse_mode(mode);
    opt.budget = budget;
    if (!save_path.empty() && opt.mode != PipelineMode::Explicit)
        throw usage_error("--save needs --mode explicit");
    SequenceResult seq = slope_sequence(hyperelliptic_base(g), opt);
    write_output(render(sequence_table(seq.reports), format), out_path);
    if (!save_path.empty())
        save_monodromy(*seq.final_word, save_path);
    return 0;
}

int run_thm12(int g, int n, const std::string& mode, std::size_t budget, const std::string& format,
              const std::string& out_path, const std::string& save_path)
{
    PipelineMode m = parse_mode(mode);
    if (!save_path.empty() && m != PipelineMode::Explicit)
        throw usage_error("--save needs --mode explicit");
    FamilyResult fam = simply_connected_family(g, n, m, budget);
    const CertificateSet& c = fam.certificates;
    Rat high = Rat(2) + make_rat(4 * g - 8, BigInt(1) << n);

    std::ostringstream out;
    Table steps = sequence_table(fam.steps);
    out << render(steps, format);
    if (format == "json") {
        nlohmann::json j;
        j["lambda"] = rat_string(fam.report.lambda);
        j["lambda_dec"] = rat_decimal(fam.report.lambda, 6);
        j["bounds"] = {{"lower", "2"}, {"upper", rat_string(high)}, {"pass", c.slope_bounds}};
        j["certificates"] = {{"homology_identity", c.homology_identity},
                             {"full_chain_presence", c.full_chain_presence},
                             {"h1_trivial", c.h1_trivial},
                             {"simply_connected", c.simply_connected},
                             {"minimal", c.minimal},
                             {"slope_bounds", c.slope_bounds},
                             {"word_certificates_computed", c.word_certificates_computed}};
        out << j.dump(2) << "\n";
    } else {
        out << "lambda = " << rat_string(fam.report.lambda) << " ~ " << rat_decimal(fam.report.lambda, 6)
            << "\n";
        out << "bounds: 2 < lambda < " << rat_string(high) << " : " << (c.slope_bounds ? "pass" : "FAIL")
            << "\n";
        out << "certificates: homology_identity=" << (c.homology_identity ? "pass" : "FAIL")
            << " full_chain_presence=" << (c.full_chain_presence ? "pass" : "FAIL")
            << " h1_trivial=" << (c.h1_trivial ? "pass" : "FAIL")
            << " simply_connected=" << (c.simply_connected ? "pass" : "FAIL")
            << " minimal=" << (c.minimal ? "pass" : "FAIL")
            << (c.word_certificates_computed ? "" : " (word-level certificates need --mode explicit)") << "\n";
    }
    write_output(out.str(), out_path);
    if (!save_path.empty())
        save_monodromy(*fam.word, save_path);
    return 0;
}

int run_lantern(int g, const std::string& in_path, const std::string& dir, const std::string& curve,
                const std::string& format, const std::string& out_path, const std::string& save_path)
{
    Factorization w = in_path.empty() ? hyperelliptic_base(g) : load_monodromy(in_path);
    WalkDirection d = dir == "down" ? WalkDirection::Down : WalkDirection::Up;
    WalkResult res = lantern_walk(w, curve, d);
    Table t;
    t.headers = {"stage", "n", "sigma", "e", "K2", "chi_f", "lambda", "lambda_dec"};
    auto add = [&](const std::string& stage, const SlopeReport& r) {
        std::vector<std::string> row{stage, r.n.str(), r.sigma.str()};
        auto rest = report_row(r);
        row.insert(row.end(), rest.begin(), rest.end());
        t.rows.push_back(std::move(row));
    };
    add("before", res.before);
    add("after", res.after);
    std::ostringstream out;
    out << render(t, format);
    if (format != "json")
        out << "verdict: slope strictly " << (d == WalkDirection::Down ? "decreased" : "increased") << "\n";
    write_output(out.str(), out_path);
    if (!save_path.empty())
        save_monodromy(res.word, save_path);
    return 0;
}

int run_verify(const std::string& path, const std::string& format, const std::string& out_path)
{
    Factorization w = load_monodromy(path);
    Table t;
    t.headers = {"check", "status", "detail"};
    bool all = true;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        t.rows.push_back({name, pass ? "pass" : "FAIL", detail});
        if (!pass)
            all = false;
    };

    bool count_ok = w.ledger().n == BigInt(w.size());
    add("ledger_letter_count", count_ok,
        "ledger n=" + w.ledger().n.str() + ", letters=" + std::to_string(w.size()));
    bool identity = verify_relator_homology(w);
    add("homology_identity", identity, identity ? "product of transvections is the identity" : "product != identity");
    for (const auto& [name, d] : w.surface()->declared_maps()) {
        ConsistencyReport rep = check_declared_consistency(*w.surface(), d);
        std::string detail;
        for (const auto& f : rep.failures)
            detail += (detail.empty() ? "" : "; ") + f;
        add("declared_map_" + name, rep.pass, detail.empty() ? "matrix symplectic, axioms consistent" : detail);
    }
    try {
        SlopeReport r = slope_report(w.ledger());
        SanityReport sanity = sanity_bounds(r);
        for (const auto& c : sanity.checks)
            add(c.name, c.pass, c.detail);
        add("slope", true, "lambda = " + rat_string(r.lambda) + " ~ " + rat_decimal(r.lambda, 6));
    } catch (const verify_error& e) {
        add("ledger_consistency", false, e.what());
    }
    std::vector<Int> divisors = h1_of_fiber_quotient(w);
    std::string div_text;
    for (Int d : divisors)
        div_text += (div_text.empty() ? "" : ",") + std::to_string(d);
    add("h1_fiber_quotient", true, divisors.empty() ? "trivial" : "divisors " + div_text);

    write_output(render(t, format), out_path);
    return all ? 0 : 1;
}

int run_table(const std::string& gs, const std::string& hs, const std::string& rs, int n,
              const std::string& mode, std::size_t budget, unsigned jobs, const std::string& format,
              const std::string& out_path)
{
    struct Config {
        int g, h;
        long long r;
    };
    std::vector<Config> configs;
    for (int g : parse_int_list(gs))
        for (int h : parse_int_list(hs))
            for (int r : parse_int_list(rs)) {
                if (g < 3 || h < 1 || h > g - 1 || r < 1)
                    continue;
                configs.push_back({g, h, r});
            }
    PipelineMode m = parse_mode(mode);

    auto run_one = [&](const Config& c) {
        SequenceOptions opt;
        opt.h = c.h;
        opt.r = c.r;
        opt.steps = n;
        opt.mode = m;
        opt.budget = budget;
        return slope_sequence(hyperelliptic_base(c.g), opt).reports;
    };

    std::vector<std::vector<StepReport>> results(configs.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < configs.size(); ++i)
            results[i] = run_one(configs[i]);
    } else {
        std::vector<std::future<std::vector<StepReport>>> futures;
        futures.reserve(configs.size());
        for (const auto& c : configs)
            futures.push_back(std::async(std::launch::async, run_one, c));
        for (std::size_t i = 0; i < configs.size(); ++i)
            results[i] = futures[i].get();
    }

    Table t;
    t.headers = {"g", "h", "r", "i", "r_i", "n", "sigma", "e", "K2", "chi_f", "lambda", "lambda_dec"};
    for (std::size_t i = 0; i < configs.size(); ++i)
        for (const auto& s : results[i]) {
            std::vector<std::string> row{std::to_string(configs[i].g), std::to_string(configs[i].h),
                                         std::to_string(configs[i].r), std::to_string(s.index), s.r.str(),
                                         s.n.str(), s.sigma.str()};
            auto rest = report_row(s.report);
            row.insert(row.end(), rest.begin(), rest.end());
            t.rows.push_back(std::move(row));
        }
    write_output(render(t, format), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact monodromy-factorization calculator for Lefschetz fibrations over the sphere"};
    app.require_subcommand(1);

    std::string format = "text", out_path, save_path, mode = "explicit";
    std::size_t budget = 0;
    auto add_common = [&](CLI::App* cmd, bool with_mode) {
        cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "csv", "md", "json"}));
        cmd->add_option("--out", out_path, "write the table/report to this path instead of stdout");
        if (with_mode)
            cmd->add_option("--mode", mode, "explicit words or ledger-only arithmetic")
                ->check(CLI::IsMember({"explicit", "ledger"}));
        cmd->add_option("--max-letters", budget,
                        "explicit-mode letter budget (env LEFSCHETZ_MAX_LETTERS overrides the default)");
    };

    int g = 3, h = 1, n = 0;
    long long r = 1;
    std::string dir, curve = "c1", in_path, file_path;
    std::string gs, hs = "1", rs = "1";
    unsigned jobs = 1;

    CLI::App* base = app.add_subcommand("base", "hyperelliptic base fibration: ledger and slope");
    base->add_option("--g", g, "genus")->required()->check(CLI::Range(2, 64));
    base->add_option("--save", save_path, "write the monodromy file here");
    add_common(base, false);

    CLI::App* thm124 = app.add_subcommand(
        "thm124", "doubling sequence: twisted self fiber sums plus odd-chain substitutions");
    thm124->add_option("--g", g, "genus")->required()->check(CLI::Range(3, 64));
    thm124->add_option("--h", h, "odd-chain parameter (1 <= h <= g-1)")->required()->check(CLI::Range(1, 63));
    thm124->add_option("--r", r, "initial multiplicity of the designated twist")->check(CLI::Range(1LL, 1LL << 40));
    thm124->add_option("--n", n, "number of steps")->required()->check(CLI::Range(0, 1 << 20));
    thm124->add_option("--save", save_path, "write the final word's monodromy file here (explicit mode)");
    add_common(thm124, true);

    CLI::App* thm12 = app.add_subcommand("thm12", "simply connected minimal family with slope near 2");
    thm12->add_option("--g", g, "genus")->required()->check(CLI::Range(3, 64));
    thm12->add_option("--n", n, "family index")->required()->check(CLI::Range(0, 1 << 20));
    thm12->add_option("--save", save_path, "write the family member's monodromy file here (explicit mode)");
    add_common(thm12, true);

    CLI::App* lantern = app.add_subcommand("lantern", "slope walk by lantern substitution");
    lantern->add_option("--g", g, "genus of the hyperelliptic base to walk on")->check(CLI::Range(3, 64));
    lantern->add_option("--dir", dir, "walk direction")->required()->check(CLI::IsMember({"down", "up"}));
    lantern->add_option("--curve", curve, "designated nonseparating curve");
    lantern->add_option("--in", in_path, "walk on this monodromy file instead of the base");
    lantern->add_option("--save", save_path, "write the walked word's monodromy file here");
    add_common(lantern, false);

    CLI::App* verify = app.add_subcommand("verify", "re-run identity, ledger, and H1 checks on a file");
    verify->add_option("file", file_path, "monodromy file")->required();
    add_common(verify, false);

    CLI::App* table = app.add_subcommand("table", "grid sweep over (g, h, r) sequences");
    table->add_option("--g", gs, "genus list, e.g. 3,4 or 3-6")->required();
    table->add_option("--h", hs, "h list");
    table->add_option("--r", rs, "r list");
    table->add_option("--n", n, "number of steps")->required()->check(CLI::Range(0, 1 << 20));
    table->add_option("--jobs", jobs, "parallel workers with ordered merge")->check(CLI::Range(1u, 256u));
    add_common(table, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (budget == 0)
            budget = default_letter_budget();
        if (base->parsed())
            return run_base(g, format, out_path, save_path);
        if (thm124->parsed())
            return run_thm124(g, h, r, n, mode, budget, format, out_path, save_path);
        if (thm12->parsed())
            return run_thm12(g, n, mode, budget, format, out_path, save_path);
        if (lantern->parsed())
            return run_lantern(g, in_path, dir, curve, format, out_path, save_path);
        if (verify->parsed())
            return run_verify(file_path, format, out_path);
        if (table->parsed())
            return run_table(gs, hs, rs, n, mode, budget, jobs, format, out_path);
    } catch (const budget_error& e) {
        std::cerr << "letter budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const verify_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
