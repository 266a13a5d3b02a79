#include "pofuzz/cli/serialize.hpp"

#include <json.hpp>

#include <sstream>

namespace pofuzz::cli {

namespace {

using nlohmann::json;
using world::Address;

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field '") + key + "'");
    return *it;
}

std::string str(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

template <class T>
T num(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number()) bad(std::string("field '") + key + "' must be a number");
    return v.get<T>();
}

bool flag(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_boolean()) bad(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

const json& arr(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array()) bad(std::string("field '") + key + "' must be an array");
    return v;
}

Address addr(const json& j, const char* key) {
    try {
        return Address::from_hex(str(j, key));
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception& e) {
        bad(std::string("field '") + key + "': " + e.what());
    }
}

Amount amount(const json& j, const char* key) {
    std::string s = str(j, key);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        bad(std::string("field '") + key + "' must be a decimal string");
    }
    try {
        return Amount(s);
    } catch (const std::exception&) {
        bad(std::string("field '") + key + "' does not fit 256 bits");
    }
}

Signed signed_amount(const json& j, const char* key) {
    std::string s = str(j, key);
    std::string digits = !s.empty() && s[0] == '-' ? s.substr(1) : s;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        bad(std::string("field '") + key + "' must be a signed decimal string");
    }
    return Signed(s);
}

// transactions

json tx_json(const world::Transaction& tx);
world::Transaction tx_from(const json& j);

json spec_json(const actions::ActionSpec& s) {
    json body = json::array();
    for (const auto& t : s.body) body.push_back(tx_json(t));
    json params = json::array();
    for (const auto& p : s.params) params.push_back(p.str());
    return json{{"kind", std::string(actions::to_string(s.kind))},
                {"token", s.token.hex()},
                {"counter", s.counter.hex()},
                {"pair", s.pair.hex()},
                {"percentage", s.percentage.value()},
                {"add", s.add},
                {"borrow_token0", s.borrow_token0},
                {"op", std::string(actions::to_string(s.op))},
                {"body", body},
                {"macro", s.macro},
                {"params", params}};
}

actions::ActionSpec spec_from(const json& j) {
    actions::ActionSpec s;
    try {
        s.kind = actions::parse_action_kind(str(j, "kind"));
        s.op = actions::parse_pair_op(str(j, "op"));
        s.percentage = actions::Percentage(num<std::uint64_t>(j, "percentage"));
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception& e) {
        bad(std::string("action: ") + e.what());
    }
    s.token = addr(j, "token");
    s.counter = addr(j, "counter");
    s.pair = addr(j, "pair");
    s.add = flag(j, "add");
    s.borrow_token0 = flag(j, "borrow_token0");
    for (const auto& t : arr(j, "body")) s.body.push_back(tx_from(t));
    s.macro = str(j, "macro");
    for (const auto& p : arr(j, "params")) {
        if (!p.is_string()) bad("macro parameters must be decimal strings");
        s.params.push_back(amount(json{{"v", p}}, "v"));
    }
    return s;
}

json tx_json(const world::Transaction& tx) {
    json j{{"sender", tx.sender.hex()},
           {"value", tx.value.str()},
           {"repeat", tx.repeat},
           {"pinned", tx.pinned}};
    if (const auto* raw = std::get_if<world::RawCall>(&tx.call)) {
        json args = json::array();
        for (const auto& a : raw->args) {
            if (const auto* ad = std::get_if<Address>(&a)) {
                args.push_back(json{{"address", ad->hex()}});
            } else {
                args.push_back(json{{"uint", std::get<Amount>(a).str()}});
            }
        }
        j["raw"] = json{{"target", raw->target.hex()}, {"function", raw->function}, {"args", args}};
    } else {
        j["action"] = spec_json(std::get<actions::ActionSpec>(tx.call));
    }
    return j;
}

world::Transaction tx_from(const json& j) {
    world::Transaction tx;
    tx.sender = addr(j, "sender");
    tx.value = amount(j, "value");
    tx.repeat = num<std::uint32_t>(j, "repeat");
    if (tx.repeat == 0 || tx.repeat > world::kMaxRepeat) bad("repeat must be in [1, 1000]");
    tx.pinned = flag(j, "pinned");
    if (j.contains("raw")) {
        const json& r = j["raw"];
        world::RawCall c;
        c.target = addr(r, "target");
        c.function = str(r, "function");
        for (const auto& a : arr(r, "args")) {
            if (a.contains("address")) {
                c.args.emplace_back(addr(a, "address"));
            } else {
                c.args.emplace_back(amount(a, "uint"));
            }
        }
        tx.call = std::move(c);
    } else if (j.contains("action")) {
        tx.call = spec_from(j["action"]);
    } else {
        bad("transaction needs 'raw' or 'action'");
    }
    return tx;
}

json seq_json(const world::TxSequence& s) {
    json txs = json::array();
    for (const auto& t : s.txs) txs.push_back(tx_json(t));
    return json{{"pricing_token", s.pricing_token.hex()}, {"txs", txs}};
}

world::TxSequence seq_from(const json& j) {
    world::TxSequence s;
    s.pricing_token = addr(j, "pricing_token");
    for (const auto& t : arr(j, "txs")) s.txs.push_back(tx_from(t));
    return s;
}

// proofs

std::string_view mode_name(oracle::AccountingMode m) {
    return m == oracle::AccountingMode::Full ? "full" : "balance_only";
}

json proof_json(const engine::ProofOfProfit& p) {
    json trace = json::array();
    for (const auto& t : p.trace) trace.push_back(tx_json(t));
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(p.receipt_digest));
    return json{{"scenario", p.scenario},
                {"scenario_fingerprint", p.scenario_fingerprint},
                {"seq", seq_json(p.seq)},
                {"pricing_token", p.pricing_token.hex()},
                {"accounting", std::string(mode_name(p.mode))},
                {"initial_value", p.initial_value.str()},
                {"final_value", p.final_value.str()},
                {"profit", p.profit.str()},
                {"liquidation", trace},
                {"receipt_digest", digest},
                {"found_at", p.found_at}};
}

engine::ProofOfProfit proof_from(const json& j) {
    engine::ProofOfProfit p;
    p.scenario = str(j, "scenario");
    p.scenario_fingerprint = str(j, "scenario_fingerprint");
    p.seq = seq_from(field(j, "seq"));
    p.pricing_token = addr(j, "pricing_token");
    std::string mode = str(j, "accounting");
    if (mode == "full") {
        p.mode = oracle::AccountingMode::Full;
    } else if (mode == "balance_only") {
        p.mode = oracle::AccountingMode::BalanceOnly;
    } else {
        bad("unknown accounting mode '" + mode + "'");
    }
    p.initial_value = amount(j, "initial_value");
    p.final_value = amount(j, "final_value");
    p.profit = signed_amount(j, "profit");
    for (const auto& t : arr(j, "liquidation")) p.trace.push_back(tx_from(t));
    std::string digest = str(j, "receipt_digest");
    if (digest.size() != 16 || digest.find_first_not_of("0123456789abcdef") != std::string::npos) {
        bad("receipt_digest must be 16 hex digits");
    }
    p.receipt_digest = std::stoull(digest, nullptr, 16);
    p.found_at = num<std::uint64_t>(j, "found_at");
    return p;
}

// campaign results

maximizer::StepRule rule_from(const std::string& s) {
    for (auto r : {maximizer::StepRule::Init, maximizer::StepRule::Grow, maximizer::StepRule::Flip,
                   maximizer::StepRule::Retire}) {
        if (maximizer::to_string(r) == s) return r;
    }
    bad("unknown step rule '" + s + "'");
}

json config_json(const engine::CampaignConfig& c) {
    json pricing = json::array();
    for (const auto& a : c.pricing_tokens) pricing.push_back(a.hex());
    return json{{"seed", c.seed},
                {"iterations", c.iterations},
                {"max_len", c.max_len},
                {"sgd_budget", c.sgd_budget},
                {"restarts", c.restarts},
                {"sgd_share", c.sgd_share},
                {"ablation", std::string(engine::to_string(c.variant))},
                {"pricing_tokens", pricing},
                {"record_schedules", c.record_schedules},
                {"time_budget", c.time_budget}};
}

engine::CampaignConfig config_from(const json& j) {
    engine::CampaignConfig c;
    c.seed = num<std::uint64_t>(j, "seed");
    c.iterations = num<std::uint64_t>(j, "iterations");
    c.max_len = num<std::size_t>(j, "max_len");
    c.sgd_budget = num<std::uint64_t>(j, "sgd_budget");
    c.restarts = num<unsigned>(j, "restarts");
    c.sgd_share = num<std::uint64_t>(j, "sgd_share");
    try {
        c.variant = engine::parse_variant(str(j, "ablation"));
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
    for (const auto& a : arr(j, "pricing_tokens")) c.pricing_tokens.push_back(addr(json{{"v", a}}, "v"));
    c.record_schedules = flag(j, "record_schedules");
    c.time_budget = num<double>(j, "time_budget");
    return c;
}

json stats_json(const engine::CampaignStats& s) {
    json cands = json::object();
    for (std::size_t i = 0; i < oracle::kCriterionCount; ++i) {
        cands[std::string(oracle::to_string(static_cast<oracle::Criterion>(i)))] = s.candidates[i];
    }
    json timeline = json::array();
    for (const auto& t : s.timeline) {
        timeline.push_back(json{{"evaluation", t.evaluation}, {"pricing_token", t.pricing_token.hex()},
                                {"profit", t.profit.str()}});
    }
    return json{{"iterations", s.iterations},
                {"evaluations", s.evaluations},
                {"transactions", s.transactions},
                {"candidate_inputs", s.candidate_inputs},
                {"candidates", cands},
                {"sgd_runs", s.sgd_runs},
                {"sgd_evaluations", s.sgd_evaluations},
                {"corpus_size", s.corpus_size},
                {"proofs_verified", s.proofs_verified},
                {"timeline", timeline}};
}

engine::CampaignStats stats_from(const json& j) {
    engine::CampaignStats s;
    s.iterations = num<std::uint64_t>(j, "iterations");
    s.evaluations = num<std::uint64_t>(j, "evaluations");
    s.transactions = num<std::uint64_t>(j, "transactions");
    s.candidate_inputs = num<std::uint64_t>(j, "candidate_inputs");
    const json& cands = field(j, "candidates");
    for (std::size_t i = 0; i < oracle::kCriterionCount; ++i) {
        std::string name(oracle::to_string(static_cast<oracle::Criterion>(i)));
        s.candidates[i] = num<std::uint64_t>(cands, name.c_str());
    }
    s.sgd_runs = num<std::uint64_t>(j, "sgd_runs");
    s.sgd_evaluations = num<std::uint64_t>(j, "sgd_evaluations");
    s.corpus_size = num<std::uint64_t>(j, "corpus_size");
    s.proofs_verified = num<std::uint64_t>(j, "proofs_verified");
    for (const auto& t : arr(j, "timeline")) {
        s.timeline.push_back(
            engine::TimelinePoint{num<std::uint64_t>(t, "evaluation"), addr(t, "pricing_token"),
                                  signed_amount(t, "profit")});
    }
    return s;
}

json sgd_json(const engine::SgdRun& r) {
    json sched = json::array();
    for (const auto& e : r.schedule) {
        sched.push_back(json{{"evaluation", e.evaluation},
                             {"var", e.var},
                             {"additive", e.additive},
                             {"rule", std::string(maximizer::to_string(e.rule))},
                             {"gradient", e.gradient},
                             {"alpha_prev", e.alpha_prev.str()},
                             {"alpha", e.alpha.str()},
                             {"applied", e.applied.str()},
                             {"x_before", e.x_before.str()},
                             {"x_after", e.x_after.str()},
                             {"profit", e.profit.str()}});
    }
    json conv = json::array();
    for (const auto& [ev, best] : r.convergence) conv.push_back(json{{"evaluation", ev}, {"best", best.str()}});
    return json{{"iteration", r.iteration},
                {"restart", r.restart},
                {"best_profit", r.best_profit.str()},
                {"evaluations", r.evaluations},
                {"schedule", sched},
                {"convergence", conv}};
}

engine::SgdRun sgd_from(const json& j) {
    engine::SgdRun r;
    r.iteration = num<std::uint64_t>(j, "iteration");
    r.restart = num<unsigned>(j, "restart");
    r.best_profit = signed_amount(j, "best_profit");
    r.evaluations = num<std::uint64_t>(j, "evaluations");
    for (const auto& e : arr(j, "schedule")) {
        maximizer::ScheduleEntry s;
        s.evaluation = num<std::uint64_t>(e, "evaluation");
        s.var = num<std::size_t>(e, "var");
        s.additive = flag(e, "additive");
        s.rule = rule_from(str(e, "rule"));
        s.gradient = num<int>(e, "gradient");
        s.alpha_prev = signed_amount(e, "alpha_prev");
        s.alpha = signed_amount(e, "alpha");
        s.applied = signed_amount(e, "applied");
        s.x_before = amount(e, "x_before");
        s.x_after = amount(e, "x_after");
        s.profit = signed_amount(e, "profit");
        r.schedule.push_back(std::move(s));
    }
    for (const auto& c : arr(j, "convergence")) {
        r.convergence.emplace_back(num<std::uint64_t>(c, "evaluation"), signed_amount(c, "best"));
    }
    return r;
}

json result_json(const engine::CampaignResult& r) {
    json best = json::array();
    for (const auto& [token, p] : r.best) best.push_back(proof_json(p));
    json sgd = json::array();
    for (const auto& s : r.sgd_runs) sgd.push_back(sgd_json(s));
    return json{{"scenario", r.scenario},
                {"config", config_json(r.config)},
                {"best", best},
                {"stats", stats_json(r.stats)},
                {"sgd_runs", sgd}};
}

engine::CampaignResult result_from(const json& j) {
    engine::CampaignResult r;
    r.scenario = str(j, "scenario");
    r.config = config_from(field(j, "config"));
    for (const auto& p : arr(j, "best")) {
        auto proof = proof_from(p);
        r.best[proof.pricing_token] = std::move(proof);
    }
    r.stats = stats_from(field(j, "stats"));
    for (const auto& s : arr(j, "sgd_runs")) r.sgd_runs.push_back(sgd_from(s));
    return r;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        bad(std::string("not valid JSON: ") + e.what());
    }
}

}  // namespace

bool RunReport::found_proof() const {
    for (const auto& r : runs) {
        if (!r.best.empty()) return true;
    }
    return false;
}

std::string to_json(const RunReport& report) {
    json runs = json::array();
    json elapsed = json::array();
    for (const auto& r : report.runs) {
        runs.push_back(result_json(r));
        elapsed.push_back(r.elapsed_seconds);
    }
    json j{{"format", kReportFormat},
           {"scenario", report.scenario},
           {"scenario_fingerprint", report.scenario_fingerprint},
           {"labels", report.labels},
           {"runs", runs},
           {"timestamp", json{{"generated_at", report.generated_at}, {"elapsed_seconds", elapsed}}}};
    return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text) {
    json j = parse(text);
    if (str(j, "format") != kReportFormat) bad("not a " + std::string(kReportFormat) + " document");
    RunReport r;
    r.scenario = str(j, "scenario");
    r.scenario_fingerprint = str(j, "scenario_fingerprint");
    const json& labels = field(j, "labels");
    if (!labels.is_object()) bad("labels must be an object");
    for (const auto& [k, v] : labels.items()) {
        if (!v.is_string()) bad("labels must map to strings");
        r.labels[k] = v.get<std::string>();
    }
    for (const auto& run : arr(j, "runs")) r.runs.push_back(result_from(run));
    const json& ts = field(j, "timestamp");
    r.generated_at = str(ts, "generated_at");
    const json& elapsed = arr(ts, "elapsed_seconds");
    if (elapsed.size() != r.runs.size()) bad("one elapsed_seconds entry per run expected");
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
        if (!elapsed[i].is_number()) bad("elapsed_seconds must hold numbers");
        r.runs[i].elapsed_seconds = elapsed[i].get<double>();
    }
    return r;
}

std::string proof_to_json(const engine::ProofOfProfit& proof) {
    json j = proof_json(proof);
    j["format"] = kProofFormat;
    return j.dump(2) + "\n";
}

engine::ProofOfProfit proof_from_json(const std::string& text) {
    json j = parse(text);
    if (str(j, "format") != kProofFormat) bad("not a " + std::string(kProofFormat) + " document");
    return proof_from(j);
}

std::vector<engine::ProofOfProfit> proofs_from_document(const std::string& text) {
    json j = parse(text);
    std::string format = str(j, "format");
    if (format == kProofFormat) return {proof_from(j)};
    if (format != kReportFormat) bad("unknown document format '" + format + "'");
    std::vector<engine::ProofOfProfit> out;
    for (const auto& run : report_from_json(text).runs) {
        for (const auto& [token, p] : run.best) out.push_back(p);
    }
    return out;
}

std::string strip_timestamp(const std::string& report_json) {
    json j = parse(report_json);
    j.erase("timestamp");
    return j.dump();
}

std::string convergence_csv(const RunReport& report) {
    std::ostringstream os;
    os << "run,sgd_run,evaluation,best_profit\n";
    for (std::size_t r = 0; r < report.runs.size(); ++r) {
        const auto& runs = report.runs[r].sgd_runs;
        for (std::size_t s = 0; s < runs.size(); ++s) {
            for (const auto& [ev, best] : runs[s].convergence) os << r << ',' << s << ',' << ev << ',' << best << '\n';
        }
    }
    return os.str();
}

}  // namespace pofuzz::cli
