#include "pofuzz/cli/commands.hpp"

#include "pofuzz/cli/serialize.hpp"
#include "pofuzz/engine/suite.hpp"

#include <json.hpp>

#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace pofuzz::cli {

namespace {

std::string now_utc() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void scenario_error(std::ostream& err, const scenarios::ScenarioError& e) {
    err << "error: " << e.what();
    if (e.line() > 0) err << " (line " << e.line() << ")";
    err << '\n';
}

bool read_file(const std::string& path, std::string& text) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    return true;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

/// a / b as a percentage with one decimal, "-" when b is zero.
std::string percent(const Signed& a, const Signed& b) {
    if (b == 0) return "-";
    Signed permille = a * 1000 / b;
    std::ostringstream os;
    os << permille / 10 << '.' << permille % 10 << '%';
    return os.str();
}

}  // namespace

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
    scenarios::Scenario sc;
    try {
        sc = scenarios::load_scenario(args.scenario);
    } catch (const scenarios::ScenarioError& e) {
        scenario_error(err, e);
        return kExitError;
    }
    engine::CampaignConfig base;
    try {
        base.variant = engine::parse_variant(args.ablation);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    if (args.repeat == 0) {
        err << "error: --repeat must be at least 1\n";
        return kExitError;
    }
    base.iterations = args.iterations;
    base.sgd_budget = args.sgd_budget;
    base.restarts = args.restarts;
    base.max_len = args.max_len;
    base.record_schedules = args.emit_schedule;
    base.time_budget = args.time_budget;

    const auto n = static_cast<std::int64_t>(args.repeat);
    std::vector<engine::CampaignResult> runs(args.repeat);
    std::vector<std::string> errors(args.repeat);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        engine::CampaignConfig c = base;
        c.seed = args.seed + static_cast<std::uint64_t>(i);
        try {
            runs[static_cast<std::size_t>(i)] = engine::run_campaign(sc, c);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (const auto& e : errors) {
        if (!e.empty()) {
            err << "error: " << e << '\n';
            return kExitError;
        }
    }

    RunReport report;
    report.scenario = sc.name;
    report.scenario_fingerprint = sc.fingerprint();
    for (const auto& [a, name] : sc.names) report.labels[a.hex()] = name;
    report.runs = std::move(runs);
    report.generated_at = now_utc();

    if (!write_file(args.out, to_json(report))) {
        err << "error: cannot write " << args.out << '\n';
        return kExitError;
    }
    if (args.emit_schedule && !write_file(args.out + ".convergence.csv", convergence_csv(report))) {
        err << "error: cannot write " << args.out << ".convergence.csv\n";
        return kExitError;
    }

    for (const auto& r : report.runs) {
        out << sc.name << " seed " << r.config.seed << ": ";
        if (r.best.empty()) {
            out << "no proof-of-profit";
        } else {
            bool first = true;
            for (const auto& [token, p] : r.best) {
                out << (first ? "" : ", ") << p.profit << ' ' << sc.name_of(token);
                first = false;
            }
            out << " (replay verified)";
        }
        out << "  [" << r.stats.iterations << " iterations, " << r.stats.evaluations << " executions, "
            << r.stats.sgd_runs << " sgd runs]\n";
    }
    out << "report: " << args.out << '\n';
    return report.found_proof() ? kExitFound : kExitNone;
}

int cmd_replay(const ReplayArgs& args, std::ostream& out, std::ostream& err) {
    std::string text;
    if (!read_file(args.proof, text)) {
        err << "error: cannot read " << args.proof << '\n';
        return kExitError;
    }
    std::vector<engine::ProofOfProfit> proofs;
    try {
        proofs = proofs_from_document(text);
    } catch (const FormatError& e) {
        err << "error: " << args.proof << ": " << e.what() << '\n';
        return kExitError;
    }
    if (proofs.empty()) {
        err << "error: " << args.proof << " holds no proof-of-profit\n";
        return kExitError;
    }

    std::map<std::string, scenarios::Scenario> loaded;
    int status = kExitFound;
    for (const auto& p : proofs) {
        const std::string ref = args.scenario.empty() ? p.scenario : args.scenario;
        auto it = loaded.find(ref);
        if (it == loaded.end()) {
            try {
                it = loaded.emplace(ref, scenarios::load_scenario(ref)).first;
            } catch (const scenarios::ScenarioError& e) {
                scenario_error(err, e);
                return kExitError;
            }
        }
        const scenarios::Scenario& sc = it->second;
        try {
            Signed realized = engine::replay(sc, p);
            out << "ok: " << sc.name << " profit " << realized << ' ' << sc.name_of(p.pricing_token) << '\n';
        } catch (const engine::ReplayValidationError& e) {
            err << "error: " << e.what() << '\n';
            return kExitError;
        } catch (const engine::MismatchError& e) {
            out << "mismatch: " << sc.name << ": " << e.what() << "\n  expected " << e.expected()
                << "\n  realized " << e.realized() << '\n';
            status = kExitMismatch;
        }
    }
    return status;
}

int cmd_suite(const SuiteArgs& args, std::ostream& out, std::ostream& err) {
    engine::SuiteConfig cfg;
    cfg.scenarios = args.scenarios;
    cfg.seeds.clear();
    for (unsigned s = 1; s <= args.seeds; ++s) cfg.seeds.push_back(s);
    cfg.base.iterations = args.iterations;
    cfg.base.sgd_budget = args.sgd_budget;

    engine::SuiteResult res;
    try {
        res = args.serial ? engine::run_suite_serial(cfg) : engine::run_suite(cfg);
    } catch (const scenarios::ScenarioError& e) {
        scenario_error(err, e);
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    bool replay_ok = true;
    std::size_t proofs = 0;
    for (const auto& c : res.cells) {
        proofs += c.result.best.size();
        if (!c.replay_ok) {
            replay_ok = false;
            err << "replay failure: " << c.scenario << " seed " << c.seed << ' ' << engine::to_string(c.variant)
                << ": " << c.replay_error << '\n';
        }
    }

    const auto names = res.scenario_names();
    if (args.json || !args.out.empty()) {
        nlohmann::json j;
        j["seeds"] = args.seeds;
        j["iterations"] = args.iterations;
        j["rows"] = nlohmann::json::array();
        for (const auto& n : names) {
            nlohmann::json row{{"scenario", n}};
            const Signed full = res.total(n, engine::Variant::Full);
            for (auto v : cfg.variants) {
                const Signed t = res.total(n, v);
                row["profit"][std::string(engine::to_string(v))] = t.str();
                row["percent_of_full"][std::string(engine::to_string(v))] =
                    full == 0 ? nlohmann::json(nullptr) : nlohmann::json(static_cast<double>(t * 1000 / full) / 10);
            }
            j["rows"].push_back(row);
        }
        for (auto v : cfg.variants) {
            const std::string k(engine::to_string(v));
            j["total"][k] = res.total(v).str();
            j["scenarios_with_profit"][k] = res.scenarios_with_profit(v);
        }
        j["proofs"] = proofs;
        j["replay_ok"] = replay_ok;
        const std::string text = j.dump(2) + "\n";
        if (!args.out.empty() && !write_file(args.out, text)) {
            err << "error: cannot write " << args.out << '\n';
            return kExitError;
        }
        if (args.json) out << text;
    }
    if (!args.json) {
        out << std::left << std::setw(16) << "scenario";
        for (auto v : cfg.variants) out << std::setw(26) << engine::to_string(v);
        out << '\n';
        auto row = [&](const std::string& label, auto total) {
            out << std::setw(16) << label;
            const Signed full = total(engine::Variant::Full);
            for (auto v : cfg.variants) {
                std::ostringstream cell;
                const Signed t = total(v);
                cell << t;
                if (v != engine::Variant::Full) cell << " (" << percent(t, full) << ')';
                out << std::setw(26) << cell.str();
            }
            out << '\n';
        };
        for (const auto& n : names) row(n, [&](engine::Variant v) { return res.total(n, v); });
        row("total", [&](engine::Variant v) { return res.total(v); });
        out << "scenarios with profit:";
        for (auto v : cfg.variants) out << ' ' << engine::to_string(v) << '=' << res.scenarios_with_profit(v);
        out << "\nproofs replayed: " << proofs << (replay_ok ? " (all exact)" : " (FAILURES)") << '\n';
    }
    return replay_ok ? kExitFound : kExitMismatch;
}

}  // namespace pofuzz::cli
