// gammaseq CLI: eval | seq | roots | na | verify, with deterministic
// CSV/JSON table output.  Diagnostics go to stderr only.
// Exit codes: 0 success, 1 verification failure, 2 usage/domain error,
// 3 inconclusive-only verification.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gammaseq/analysis.hpp"
#include "gammaseq/gfun.hpp"
#include "gammaseq/kernel.hpp"
#include "gammaseq/output.hpp"
#include "gammaseq/sequences.hpp"
#include "gammaseq/series.hpp"

namespace {

using namespace gammaseq;
namespace go = gammaseq::out;

constexpr const char* kVersion = "1.0.0";

double parse_decimal(const std::string& s, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::domain_error(std::string("cannot parse ") + what + " '" + s + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct Options {
    std::string format = "csv";
    bool meta = false;
    EvalConfig cfg;
    int threads = 1;
    std::string meta_line;
};

void emit(const Options& opt, const std::vector<go::OutputRecord>& records) {
    const std::string meta = opt.meta ? opt.meta_line : std::string{};
    if (opt.format == "json")
        std::fputs(go::to_json(records, meta).c_str(), stdout);
    else
        std::fputs(go::to_csv(records, meta).c_str(), stdout);
}

int suite_exit_code(const std::vector<SuiteReport>& reports) {
    bool inconclusive = false;
    for (const SuiteReport& r : reports) {
        if (r.n_failed > 0) return 1;
        if (r.n_inconclusive > 0) inconclusive = true;
    }
    return inconclusive ? 3 : 0;
}

void report_to_stderr(const SuiteReport& r) {
    for (const auto& f : r.failures)
        std::fprintf(stderr, "FAIL %s at %.17g: lhs=%.17g rhs=%.17g\n", r.suite_id.c_str(),
                     f.where, f.lhs, f.rhs);
    for (const auto& f : r.inconclusives)
        std::fprintf(stderr, "INCONCLUSIVE %s at %.17g: lhs=%.17g rhs=%.17g\n",
                     r.suite_id.c_str(), f.where, f.lhs, f.rhs);
}

go::OutputRecord suite_record(const SuiteReport& r) {
    go::OutputRecord rec;
    rec.kind = "suite";
    rec.fields.push_back(go::text_field("suite", r.suite_id));
    rec.fields.push_back(go::text_field("range", r.range_descr));
    rec.fields.push_back(go::int_field("n_checked", r.n_checked));
    rec.fields.push_back(go::int_field("n_failed", r.n_failed));
    rec.fields.push_back(go::int_field("n_inconclusive", r.n_inconclusive));
    rec.fields.push_back(go::value_field("worst_margin", r.worst_margin));
    return rec;
}

int cmd_eval(const Options& opt, const std::string& x_str, const std::string& fields_str) {
    const double x = parse_decimal(x_str, "--x");
    static const std::vector<std::string> kAll = {"f", "fp", "fpp", "G",  "Gp", "Gpp",
                                                  "g", "h",  "d",   "A",  "a",  "R"};
    std::vector<std::string> fields = fields_str.empty() ? kAll : split_list(fields_str);
    const GPoint p = eval_point(x, opt.cfg);
    std::vector<go::OutputRecord> records;
    for (const std::string& name : fields) {
        const CertifiedValue* v = nullptr;
        if (name == "f") v = &p.f;
        else if (name == "fp") v = &p.fp;
        else if (name == "fpp") v = &p.fpp;
        else if (name == "G") v = &p.G;
        else if (name == "Gp") v = &p.Gp;
        else if (name == "Gpp") v = &p.Gpp;
        else if (name == "g") v = &p.g;
        else if (name == "h") v = &p.h;
        else if (name == "d") v = &p.d;
        else if (name == "A") v = &p.A;
        else if (name == "a") v = &p.a;
        else if (name == "R") v = &p.r;
        else throw std::domain_error("unknown field '" + name + "'");
        go::OutputRecord rec;
        rec.kind = "point";
        rec.fields.push_back(go::value_field("x", x));
        rec.fields.push_back(go::text_field("field", name));
        rec.fields.push_back(go::value_field("value", v->value));
        rec.fields.push_back(go::err_field("err", v->err));
        records.push_back(std::move(rec));
    }
    emit(opt, records);
    return 0;
}

int cmd_seq(const Options& opt, const std::string& name, std::int64_t from, std::int64_t to) {
    if (from < 1 || to < from) throw std::domain_error("seq: requires 1 <= from <= to");
    std::vector<go::OutputRecord> records;
    auto push = [&](go::OutputRecord rec) { records.push_back(std::move(rec)); };

    if (name == "sigma" || name == "S") {
        const auto table = sigma_table(to, opt.cfg);
        for (const SigmaTerm& t : table) {
            if (t.n < from) continue;
            const CertifiedValue& v = name == "sigma" ? t.sigma : t.S;
            go::OutputRecord rec;
            rec.kind = "sequence_row";
            rec.fields.push_back(go::int_field("n", t.n));
            rec.fields.push_back(go::value_field(name, v.value));
            rec.fields.push_back(go::err_field("err", v.err));
            push(std::move(rec));
        }
    } else if (name == "C" || name == "D") {
        harmonic_scan(to, [&](const HarmonicRow& row) {
            if (row.m < from) return;
            go::OutputRecord rec;
            rec.kind = "sequence_row";
            rec.fields.push_back(go::int_field("m", row.m));
            rec.fields.push_back(go::value_field(name, name == "C" ? row.C : row.D));
            rec.fields.push_back(go::err_field("err", row.round_err));
            push(std::move(rec));
        });
    } else if (name == "harmonic") {
        harmonic_scan(to, [&](const HarmonicRow& row) {
            if (row.m < from) return;
            go::OutputRecord rec;
            rec.kind = "sequence_row";
            rec.fields.push_back(go::int_field("m", row.m));
            rec.fields.push_back(go::value_field("H", row.H));
            rec.fields.push_back(go::value_field("H2", row.H2));
            rec.fields.push_back(go::value_field("C", row.C));
            rec.fields.push_back(go::value_field("D", row.D));
            rec.fields.push_back(go::err_field("err", row.round_err));
            push(std::move(rec));
        });
    } else {
        throw std::domain_error("unknown sequence '" + name +
                                "' (expected sigma|S|C|D|harmonic)");
    }
    emit(opt, records);
    return 0;
}

go::OutputRecord root_record(const RootBracket& b) {
    go::OutputRecord rec;
    rec.kind = "root";
    rec.fields.push_back(
        go::text_field("target", b.target == RootTarget::root_a ? "a" : "c"));
    rec.fields.push_back(go::value_field("lo", b.lo));
    rec.fields.push_back(go::value_field("hi", b.hi));
    rec.fields.push_back(go::value_field("width", b.width()));
    rec.fields.push_back(go::int_field("iterations", b.iterations));
    return rec;
}

int cmd_roots(const Options& opt, double tol) {
    const RootBracket a = find_root_a(tol);
    const RootBracket c = find_root_c(tol);
    emit(opt, {root_record(a), root_record(c)});
    const bool a_ok = a.lo > 7.0 && a.hi < 8.0;
    const bool c_ok = c.lo > 17.0 && c.hi < 18.0;
    if (!a_ok) std::fprintf(stderr, "root a bracket escaped (7, 8)\n");
    if (!c_ok) std::fprintf(stderr, "root c bracket escaped (17, 18)\n");
    return (a_ok && c_ok) ? 0 : 1;
}

int cmd_na(const Options& opt, const std::string& a_str, bool exact) {
    const NaResult r = n_a_decimal(a_str, exact, opt.cfg);
    go::OutputRecord rec;
    rec.kind = "na";
    rec.fields.push_back(go::value_field("a", r.a_in));
    rec.fields.push_back(go::int_field("n_a", r.n_a));
    rec.fields.push_back(go::value_field("interval_lo", r.interval_lo));
    rec.fields.push_back(go::value_field("interval_hi", r.interval_hi));
    emit(opt, {rec});
    return 0;
}

int cmd_verify(const Options& opt, const std::string& suite, std::int64_t m_max,
               std::int64_t n_max, const std::string& grid_str) {
    std::vector<double> grid;
    if (grid_str.empty()) {
        grid = default_bounds_grid();
    } else {
        for (const std::string& tok : split_list(grid_str))
            grid.push_back(parse_decimal(tok, "--grid entry"));
    }

    std::vector<SuiteReport> reports;
    if (suite == "euler") {
        reports.push_back(verify_cor_euler(m_max));
    } else if (suite == "polygamma") {
        reports.push_back(verify_cor_polygamma(m_max, opt.cfg));
    } else if (suite == "bounds") {
        reports.push_back(verify_bounds(grid, opt.cfg, opt.threads));
    } else if (suite == "limits") {
        reports.push_back(verify_limits(opt.cfg));
    } else if (suite == "monotone") {
        reports.push_back(verify_monotone(n_max, opt.cfg));
    } else if (suite == "all") {
        reports.push_back(verify_cor_euler(m_max));
        reports.push_back(verify_cor_polygamma(m_max, opt.cfg));
        reports.push_back(verify_bounds(grid, opt.cfg, opt.threads));
        reports.push_back(verify_limits(opt.cfg));
        reports.push_back(verify_monotone(n_max, opt.cfg));
    } else {
        throw std::domain_error("unknown suite '" + suite +
                                "' (expected euler|polygamma|bounds|limits|monotone|all)");
    }

    std::vector<go::OutputRecord> records;
    for (const SuiteReport& r : reports) {
        records.push_back(suite_record(r));
        report_to_stderr(r);
    }
    emit(opt, records);
    return suite_exit_code(reports);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified evaluation of G(x) = Gamma(x+1)^(1/x), its derivatives, "
                 "and the factorial-root difference sequences"};
    app.require_subcommand(1);
    app.fallthrough();  // shared flags may follow the subcommand

    Options opt;
    // precedence: flags > environment > built-in defaults
    if (const char* env = std::getenv("GAMMASEQ_TARGET_ERR")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0) opt.cfg.target_err = v;
    }
    if (const char* env = std::getenv("GAMMASEQ_MAX_TERMS")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) opt.cfg.max_terms = v;
    }

    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_flag("--meta", opt.meta, "prepend a metadata header");
    app.add_option("--target-err", opt.cfg.target_err, "absolute error target");
    app.add_option("--max-terms", opt.cfg.max_terms, "series term budget");
    app.add_option("--threads", opt.threads, "suite parallelism (output unaffected)");

    std::string eval_x, eval_fields;
    CLI::App* eval = app.add_subcommand("eval", "evaluate G and friends at one point");
    eval->add_option("--x", eval_x, "abscissa (decimal string)")->required();
    eval->add_option("--fields", eval_fields, "comma list of f,fp,fpp,G,Gp,Gpp,g,h,d,A,a,R");

    std::string seq_name;
    std::int64_t seq_from = 1, seq_to = 1;
    CLI::App* seq = app.add_subcommand("seq", "emit a sequence table");
    seq->add_option("name", seq_name, "sigma|S|C|D|harmonic")->required();
    seq->add_option("from", seq_from, "first index")->required();
    seq->add_option("to", seq_to, "last index")->required();

    double roots_tol = 1e-7;
    CLI::App* roots = app.add_subcommand("roots", "bracket the roots a and c");
    roots->add_option("--tol", roots_tol, "bracket width")->capture_default_str();

    std::string na_a;
    bool na_exact = false;
    CLI::App* na = app.add_subcommand("na", "smallest n with a^n <= n!");
    na->add_option("--a", na_a, "a > 1 (decimal string)")->required();
    na->add_flag("--exact", na_exact, "exact integer pre-check for n <= 25");

    std::string verify_suite, verify_grid;
    std::int64_t verify_m_max = 10000, verify_n_max = 5000;
    CLI::App* verify = app.add_subcommand("verify", "run an inequality-verification suite");
    verify->add_option("suite", verify_suite, "euler|polygamma|bounds|limits|monotone|all")
        ->required();
    verify->add_option("--m-max", verify_m_max, "index range for the corollary suites")
        ->capture_default_str();
    verify->add_option("--n-max", verify_n_max, "index range for the monotone suite")
        ->capture_default_str();
    verify->add_option("--grid", verify_grid, "comma list of abscissas for bounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // help goes to stdout, exit 0
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    }

    {
        std::string line = std::string("gammaseq ") + kVersion + " | backend=" +
                           series::active_backend().name + " |";
        for (int i = 1; i < argc; ++i) {
            line += " ";
            line += argv[i];
        }
        opt.meta_line = std::move(line);
    }

    try {
        opt.cfg.validate();
        euler_constant();  // certify the stored constant at startup
        if (eval->parsed()) return cmd_eval(opt, eval_x, eval_fields);
        if (seq->parsed()) return cmd_seq(opt, seq_name, seq_from, seq_to);
        if (roots->parsed()) return cmd_roots(opt, roots_tol);
        if (na->parsed()) return cmd_na(opt, na_a, na_exact);
        if (verify->parsed())
            return cmd_verify(opt, verify_suite, verify_m_max, verify_n_max, verify_grid);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return 2;
}
