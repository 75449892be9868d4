#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "amice/io.hpp"
#include "amice/selftest.hpp"

namespace {

// Exit codes: 0 ok, 2 bad config, 3 malformed input, 4 guard shortfall,
// 5 clipped coefficient, 6 verification/selftest failure, 7 precision
// exhaustion, 1 anything else.
enum ExitCode {
    kOk = 0,
    kInternal = 1,
    kConfig = 2,
    kParse = 3,
    kGuard = 4,
    kClip = 5,
    kVerifyFailed = 6,
    kPrecision = 7,
};

struct JobConfig {
    std::string input;
    std::string output;
    std::optional<long long> prime;
    std::optional<int> precision;
    std::vector<int> orders;
    int level = 2;
    std::string mode = "restrict";
    std::string ring_tag;
    int qbound = -1;
    int workers = 1;
};

void add_common(CLI::App* cmd, JobConfig& cfg, bool needs_input) {
    auto* in = cmd->add_option("--input,-i", cfg.input, "measure description file");
    if (needs_input) in->required();
    cmd->add_option("--output,-o", cfg.output, "output path (default: stdout)");
    cmd->add_option("--prime,-p", cfg.prime, "override prime p");
    cmd->add_option("--precision,-M", cfg.precision, "override precision M");
    cmd->add_option("--orders,-N", cfg.orders, "override truncation orders N_S [N_T]")
        ->expected(1, 2);
    cmd->add_option("--level,-n", cfg.level, "grid/section level n");
    cmd->add_option("--mode", cfg.mode, "restriction mode: restrict | stabilize")
        ->check(CLI::IsMember({"restrict", "stabilize"}));
    cmd->add_option("--ring", cfg.ring_tag, "override ring tag: plain | polyq")
        ->check(CLI::IsMember({"plain", "polyq"}));
    cmd->add_option("--qbound", cfg.qbound, "q-degree bound for --ring polyq");
    cmd->add_option("--workers", cfg.workers, "worker threads for grid columns")
        ->check(CLI::PositiveNumber);
}

amice::MeasureDescription load_description(const JobConfig& cfg) {
    std::ifstream in(cfg.input);
    if (!in) throw amice::parse_error("cannot open input file '" + cfg.input + "'");
    amice::MeasureDescription desc = amice::parse_measure_description(in);

    // Flags override file header fields; rebuild the description when they do.
    bool rebuild = cfg.prime || cfg.precision || !cfg.orders.empty() || !cfg.ring_tag.empty();
    if (!rebuild) return desc;

    std::ostringstream text;
    text << "prime " << (cfg.prime ? *cfg.prime : desc.ring.p) << "\n";
    text << "precision " << (cfg.precision ? *cfg.precision : desc.ring.capacity) << "\n";
    text << "orders ";
    if (!cfg.orders.empty()) {
        text << cfg.orders[0];
        if (cfg.orders.size() > 1) text << " " << cfg.orders[1];
    } else {
        text << desc.order_s;
        if (desc.arity == 2) text << " " << desc.order_t;
    }
    text << "\n";
    std::string tag = !cfg.ring_tag.empty()
                          ? cfg.ring_tag
                          : (desc.ring.tag == amice::RingTag::polyq ? "polyq" : "plain");
    if (tag == "polyq") {
        int qb = cfg.qbound >= 0 ? cfg.qbound : desc.ring.qbound;
        text << "ring polyq " << qb << "\n";
    } else {
        text << "ring plain\n";
    }
    if (!desc.label.empty()) text << "label " << desc.label << "\n";
    std::ifstream again(cfg.input);
    std::string line;
    while (std::getline(again, line)) {
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        std::string rest = line.substr(first);
        if (rest.rfind("dirac", 0) == 0 || rest.rfind("raw", 0) == 0 ||
            rest.rfind("coeff", 0) == 0)
            text << rest << "\n";
    }
    return amice::parse_measure_description_text(text.str());
}

amice::RestrictionMode parse_mode(const std::string& s) {
    return s == "stabilize" ? amice::RestrictionMode::stabilized
                            : amice::RestrictionMode::units;
}

int with_output(const JobConfig& cfg, const std::function<void(std::ostream&)>& fn) {
    if (cfg.output.empty()) {
        fn(std::cout);
        return kOk;
    }
    std::ofstream out(cfg.output);
    if (!out) {
        std::cerr << "error: cannot open output file '" << cfg.output << "'\n";
        return kConfig;
    }
    fn(out);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-precision p-adic measure calculus: transforms, unit "
                 "restriction, moment functions and sheaf-level verification"};
    app.require_subcommand(1);

    JobConfig cfg;
    auto* cmd_amice = app.add_subcommand("amice", "transform of a measure as a series table");
    auto* cmd_moments = app.add_subcommand("moments", "(k,l) moment table of a measure");
    auto* cmd_restrict = app.add_subcommand("restrict", "generic restriction to units");
    auto* cmd_stabilize = app.add_subcommand("stabilize", "Frobenius-twisted restriction");
    auto* cmd_polylog = app.add_subcommand("polylog", "closed-form moment-function grid");
    auto* cmd_verify = app.add_subcommand("verify", "check the sheaf differential equation");
    auto* cmd_selftest = app.add_subcommand("selftest", "run the invariant suite");
    for (auto* c : {cmd_amice, cmd_moments, cmd_restrict, cmd_stabilize, cmd_polylog, cmd_verify})
        add_common(c, cfg, true);
    add_common(cmd_selftest, cfg, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_selftest->parsed()) {
            std::ostringstream buf;
            bool ok = amice::run_selftest(buf);
            JobConfig out_cfg = cfg;
            int rc = with_output(out_cfg, [&](std::ostream& out) { out << buf.str(); });
            if (rc != kOk) return rc;
            return ok ? kOk : kVerifyFailed;
        }

        amice::MeasureDescription desc = load_description(cfg);
        amice::MeasureSeries m = amice::realize(desc);
        amice::RestrictionMode mode = parse_mode(cfg.mode);

        if (cmd_amice->parsed())
            return with_output(cfg, [&](std::ostream& out) {
                amice::write_series_table(out, m.series, "amice transform");
            });
        if (cmd_moments->parsed())
            return with_output(cfg, [&](std::ostream& out) {
                amice::write_moment_table(out, m, cfg.level, cfg.level);
            });
        if (cmd_restrict->parsed())
            return with_output(cfg, [&](std::ostream& out) {
                amice::write_series_table(out, amice::restrict_units(m).series,
                                          "restriction to units");
            });
        if (cmd_stabilize->parsed())
            return with_output(cfg, [&](std::ostream& out) {
                amice::write_series_table(out, amice::stabilize(m).series,
                                          "stabilized restriction");
            });
        if (cmd_polylog->parsed()) {
            amice::MomentGrid grid = amice::moment_grid_closed(m, cfg.level, mode, cfg.workers);
            return with_output(cfg, [&](std::ostream& out) { amice::write_grid_table(out, grid); });
        }
        if (cmd_verify->parsed()) {
            amice::VerifyReport rep = amice::verify_polylog(m, cfg.level, mode, cfg.workers);
            int rc = with_output(cfg, [&](std::ostream& out) {
                amice::write_verify_report(out, rep, m.ring(), mode);
            });
            if (rc != kOk) return rc;
            return rep.pass ? kOk : kVerifyFailed;
        }
        return kConfig;
    } catch (const amice::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kParse;
    } catch (const amice::guard_error& e) {
        std::cerr << "guard error: " << e.what() << "\n";
        return kGuard;
    } catch (const amice::clip_error& e) {
        std::cerr << "clip error: " << e.what() << "\n";
        return kClip;
    } catch (const amice::precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return kPrecision;
    } catch (const amice::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
