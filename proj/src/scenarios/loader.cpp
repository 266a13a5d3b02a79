#include "pofuzz/scenarios/scenario.hpp"

#include "pofuzz/amm/pair.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace pofuzz::scenarios {

namespace {

int line_of(const YAML::Node& n) {
    if (!n.IsDefined()) return 0;  // Mark() throws on missing keys
    auto m = n.Mark();
    return m.line >= 0 ? m.line + 1 : 0;
}

[[noreturn]] void fail(const YAML::Node& n, const std::string& msg) {
    throw ScenarioError(msg, line_of(n));
}

std::string text(const YAML::Node& n, const std::string& field) {
    if (!n || !n.IsScalar()) fail(n, "field '" + field + "' must be a scalar");
    return n.as<std::string>();
}

/// "1000", "0x3e8", "1e18", "250e16".
Amount amount_literal(const std::string& s) {
    auto e = s.find_first_of("eE");
    if (e == std::string::npos || s.rfind("0x", 0) == 0) return parse_amount(s);
    Amount mantissa = parse_amount(s.substr(0, e));
    unsigned long exp = std::stoul(s.substr(e + 1));
    if (exp > 77) throw std::out_of_range("exponent too large");
    Wide v = Wide(mantissa);
    for (unsigned long i = 0; i < exp; ++i) v *= 10;
    return to_amount(v);
}

Amount amount_field(const YAML::Node& n, const std::string& field) {
    std::string s = text(n, field);
    try {
        return amount_literal(s);
    } catch (const std::exception& e) {
        fail(n, "field '" + field + "': invalid amount '" + s + "' (" + e.what() + ")");
    }
}

bool flag(const YAML::Node& n, const std::string& field, bool dflt) {
    if (!n) return dflt;
    try {
        return n.as<bool>();
    } catch (const YAML::Exception&) {
        fail(n, "field '" + field + "' must be a boolean");
    }
}

struct TokenDraft {
    std::string symbol;
    std::shared_ptr<world::TokenConfig> config;
    YAML::Node fee;
};

class Builder {
public:
    explicit Builder(Scenario& sc) : sc_(sc) {}

    void name(const std::string& label, const Address& a) {
        labels_[label] = a;
        sc_.names[a] = label;
    }

    /// Resolves a label; unknown plain labels become fresh accounts when
    /// `allow_new_account` is set.
    Address resolve(const YAML::Node& n, const std::string& field, bool allow_new_account) {
        std::string s = text(n, field);
        if (auto it = labels_.find(s); it != labels_.end()) return it->second;
        if (s == "burn" || s == "dead") return Address::burn();
        if (s == "zero") return Address::zero();
        if (s.size() == 42 && s.rfind("0x", 0) == 0) {
            try {
                return Address::from_hex(s);
            } catch (const std::exception&) {
                fail(n, "field '" + field + "': malformed address '" + s + "'");
            }
        }
        if (!allow_new_account) fail(n, "field '" + field + "': unknown reference '" + s + "'");
        Address a = Address::from_label("account:" + s);
        name(s, a);
        accounts_.insert(a);
        return a;
    }

    Address token(const YAML::Node& n, const std::string& field) {
        Address a = resolve(n, field, false);
        if (!sc_.initial.is_token(a) || sc_.initial.is_pair(a)) {
            fail(n, "field '" + field + "': '" + text(n, field) + "' is not a declared token");
        }
        return a;
    }

    std::set<Address>& accounts() { return accounts_; }
    const std::map<std::string, Address>& labels() const { return labels_; }

private:
    Scenario& sc_;
    std::map<std::string, Address> labels_;
    std::set<Address> accounts_;
};

void credit(world::WorldState& s, const Address& token, const Address& holder, const Amount& v) {
    if (v == 0) return;
    auto& l = s.tokens.at(token);
    l.total_supply = l.total_supply + v;
    l.balances[holder] = l.balance_of(holder) + v;
}

world::Arg victim_arg(Builder& b, const YAML::Node& n) {
    std::string s = text(n, "args");
    if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) != 0) &&
        !(s.size() == 42 && s.rfind("0x", 0) == 0)) {
        return amount_field(n, "args");
    }
    return b.resolve(n, "args", true);
}

std::string macro_arg(Builder& b, const YAML::Node& n) {
    std::string s = text(n, "args");
    if (s == "$sender") return s;
    if (s.rfind("$p", 0) == 0) {
        if (s.size() == 2 || !std::all_of(s.begin() + 2, s.end(), ::isdigit)) {
            fail(n, "malformed macro parameter '" + s + "'");
        }
        return s;
    }
    if (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0])) &&
        !(s.size() == 42 && s.rfind("0x", 0) == 0)) {
        return amount_field(n, "args").str();
    }
    return b.resolve(n, "args", false).hex();
}

Scenario build(const YAML::Node& root) {
    Scenario sc;
    Builder b(sc);
    world::WorldState& st = sc.initial;

    if (!root || !root.IsMap()) throw ScenarioError("scenario must be a mapping", line_of(root));
    sc.name = text(root["name"], "name");
    if (root["description"]) sc.description = text(root["description"], "description");
    sc.expected_failure = flag(root["expected_failure"], "expected_failure", false);

    // tokens: ledgers first, fee hooks once pairs exist
    std::vector<TokenDraft> drafts;
    const YAML::Node tokens = root["tokens"];
    if (!tokens || !tokens.IsSequence() || tokens.size() == 0) {
        throw ScenarioError("'tokens' must be a non-empty list", line_of(root));
    }
    for (const auto& t : tokens) {
        TokenDraft d{text(t["symbol"], "symbol"), nullptr, t["fee"]};  // Node assignment throws on missing keys
        if (b.labels().count(d.symbol)) fail(t, "duplicate token '" + d.symbol + "'");
        d.config = std::make_shared<world::TokenConfig>();
        d.config->symbol = d.symbol;
        d.config->public_mint = flag(t["public_mint"], "public_mint", false);
        d.config->public_burn = flag(t["public_burn"], "public_burn", false);
        Address a = Address::from_label("token:" + d.symbol);
        b.name(d.symbol, a);
        world::TokenLedger l;
        l.config = d.config;
        st.tokens.emplace(a, std::move(l));
        drafts.push_back(d);
    }

    const YAML::Node contracts = root["contracts"];
    if (contracts && !contracts.IsSequence()) fail(contracts, "'contracts' must be a list");
    if (contracts) {
        for (const auto& c : contracts) {
            std::string nm = text(c["name"], "name");
            if (b.labels().count(nm)) fail(c, "duplicate name '" + nm + "'");
            b.name(nm, Address::from_label("contract:" + nm));
        }
    }

    std::string attacker_label = root["attacker"] ? text(root["attacker"], "attacker") : "attacker";
    sc.attacker = b.resolve(YAML::Node(attacker_label), "attacker", true);
    sc.cluster.push_back(sc.attacker);
    if (const auto ac = root["attacker_contracts"]) {
        for (const auto& a : ac) sc.cluster.push_back(b.resolve(a, "attacker_contracts", true));
    }

    // balances before pairs so a token's supply counts every holder
    for (std::size_t i = 0; i < drafts.size(); ++i) {
        const YAML::Node bal = tokens[i]["balances"];
        if (!bal) continue;
        if (!bal.IsMap()) fail(bal, "'balances' must be a mapping");
        Address tok = b.labels().at(drafts[i].symbol);
        for (const auto& kv : bal) {
            Address holder = b.resolve(kv.first, "balances", true);
            credit(st, tok, holder, amount_field(kv.second, "balances"));
        }
    }

    if (const auto pairs = root["pairs"]) {
        if (!pairs.IsSequence()) fail(pairs, "'pairs' must be a list");
        for (const auto& p : pairs) {
            const auto toks = p["tokens"];
            const auto res = p["reserves"];
            if (!toks || !toks.IsSequence() || toks.size() != 2) fail(p, "pair needs two 'tokens'");
            if (!res || !res.IsSequence() || res.size() != 2) fail(p, "pair needs two 'reserves'");
            Address t0 = b.token(toks[0], "tokens");
            Address t1 = b.token(toks[1], "tokens");
            if (t0 == t1) fail(p, "pair tokens must differ");
            Amount r0 = amount_field(res[0], "reserves");
            Amount r1 = amount_field(res[1], "reserves");
            if (r0 == 0 || r1 == 0) fail(p, "pair reserves must be positive");
            if (amm::find_pair(st, t0, t1)) fail(p, "duplicate pair");
            Address provider = p["provider"] ? b.resolve(p["provider"], "provider", true)
                                             : b.resolve(YAML::Node("lp_provider"), "provider", true);
            Address addr = amm::create_pair(st, t0, t1, r0, r1, provider);
            std::string label = text(toks[0], "tokens") + "/" + text(toks[1], "tokens");
            b.name(label, addr);
            b.name(text(toks[1], "tokens") + "/" + text(toks[0], "tokens"), addr);
            sc.names[addr] = label;
            sc.universe.pairs.push_back(addr);
        }
    }

    for (auto& d : drafts) {
        if (!d.fee) continue;
        world::FeeHook hook;
        unsigned long rate = std::stoul(text(d.fee["rate_permille"], "rate_permille"));
        if (rate > 1000) fail(d.fee, "rate_permille must be at most 1000");
        hook.rate_permille = static_cast<std::uint32_t>(rate);
        if (d.fee["destroy"]) hook.destroy = b.resolve(d.fee["destroy"], "destroy", true);
        if (const auto bp = d.fee["pairs"]) {
            for (const auto& x : bp) {
                Address a = b.resolve(x, "pairs", false);
                if (!st.is_pair(a)) fail(x, "fee pair '" + text(x, "pairs") + "' is not a pair");
                hook.bound_pairs.insert(a);
            }
        }
        if (const auto ex = d.fee["exempt"]) {
            for (const auto& x : ex) hook.exempt.insert(b.resolve(x, "exempt", true));
        }
        d.config->fee = hook;
    }

    if (contracts) {
        for (const auto& c : contracts) {
            Address self = b.labels().at(text(c["name"], "name"));
            std::string kind = text(c["kind"], "kind");
            if (kind == "router") {
                st.contracts.emplace(self, world::RouterStorage{});
            } else if (kind == "token_sale") {
                world::TokenSaleStorage s;
                s.token = b.token(c["token"], "token");
                s.price = amount_field(c["price"], "price");
                st.contracts.emplace(self, s);
                if (c["inventory"]) credit(st, s.token, self, amount_field(c["inventory"], "inventory"));
            } else if (kind == "vault") {
                world::VaultStorage v;
                v.token = b.token(c["token"], "token");
                v.router = b.resolve(c["router"], "router", false);
                st.contracts.emplace(self, v);
            } else if (kind == "vault_router") {
                world::VaultRouterStorage v;
                v.vault = b.resolve(c["vault"], "vault", false);
                v.token = b.token(c["token"], "token");
                st.contracts.emplace(self, v);
            } else if (kind == "staking_pool") {
                world::StakingPoolStorage s;
                s.token = b.token(c["token"], "token");
                if (c["bonus_permille"]) {
                    s.bonus_permille =
                        static_cast<std::uint32_t>(std::stoul(text(c["bonus_permille"], "bonus_permille")));
                }
                st.contracts.emplace(self, s);
                if (c["funding"]) credit(st, s.token, self, amount_field(c["funding"], "funding"));
            } else {
                fail(c["kind"], "unknown contract kind '" + kind + "'");
            }
            sc.universe.contracts.push_back(self);
        }
        // cross-references only resolvable once every contract exists
        for (const auto& [addr, inst] : st.contracts) {
            if (const auto* v = std::get_if<world::VaultStorage>(&inst)) {
                auto it = st.contracts.find(v->router);
                if (it == st.contracts.end() || !std::holds_alternative<world::VaultRouterStorage>(it->second)) {
                    throw ScenarioError("vault '" + sc.names[addr] + "' router is not a vault_router");
                }
            } else if (const auto* r = std::get_if<world::VaultRouterStorage>(&inst)) {
                auto it = st.contracts.find(r->vault);
                if (it == st.contracts.end() || !std::holds_alternative<world::VaultStorage>(it->second)) {
                    throw ScenarioError("vault_router '" + sc.names[addr] + "' vault is not a vault");
                }
            }
        }
    }

    if (const auto nb = root["native_balances"]) {
        if (!nb.IsMap()) fail(nb, "'native_balances' must be a mapping");
        for (const auto& kv : nb) {
            Amount v = amount_field(kv.second, "native_balances");
            if (v > 0) st.native_balances[b.resolve(kv.first, "native_balances", true)] = v;
        }
    }

    if (const auto macros = root["macros"]) {
        auto table = std::make_shared<std::map<std::string, world::Macro>>();
        for (const auto& m : macros) {
            world::Macro mac;
            mac.name = text(m["name"], "name");
            mac.arity = m["params"] ? std::stoul(text(m["params"], "params")) : 0;
            const auto calls = m["calls"];
            if (!calls || !calls.IsSequence() || calls.size() == 0) fail(m, "macro needs 'calls'");
            for (const auto& c : calls) {
                world::MacroCall mc;
                mc.target = b.resolve(c["target"], "target", false);
                mc.function = text(c["function"], "function");
                if (const auto args = c["args"]) {
                    for (const auto& a : args) {
                        std::string t = macro_arg(b, a);
                        if (t.rfind("$p", 0) == 0 && std::stoul(t.substr(2)) >= mac.arity) {
                            fail(a, "macro parameter '" + t + "' beyond declared params");
                        }
                        mc.args.push_back(t);
                    }
                }
                mac.calls.push_back(std::move(mc));
            }
            if (table->count(mac.name)) fail(m, "duplicate macro '" + mac.name + "'");
            table->emplace(mac.name, std::move(mac));
        }
        st.macros.entries = table;
    }

    const auto pricing = root["pricing_tokens"];
    if (!pricing || !pricing.IsSequence() || pricing.size() == 0) {
        throw ScenarioError("'pricing_tokens' must be a non-empty list", line_of(root));
    }
    for (const auto& p : pricing) sc.pricing_tokens.push_back(b.token(p, "pricing_tokens"));

    if (const auto victims = root["victims"]) {
        for (const auto& v : victims) {
            world::Transaction tx;
            tx.sender = b.resolve(v["sender"], "sender", true);
            world::RawCall call;
            call.target = b.resolve(v["target"], "target", false);
            call.function = text(v["function"], "function");
            if (const auto args = v["args"]) {
                for (const auto& a : args) call.args.push_back(victim_arg(b, a));
            }
            tx.call = std::move(call);
            if (v["value"]) tx.value = amount_field(v["value"], "value");
            if (v["repeat"]) {
                unsigned long r = std::stoul(text(v["repeat"], "repeat"));
                if (r < 1 || r > world::kMaxRepeat) fail(v["repeat"], "repeat must be in [1, 1000]");
                tx.repeat = static_cast<std::uint32_t>(r);
            }
            tx.pinned = true;
            sc.victims.push_back(std::move(tx));
        }
    }

    if (const auto gt = root["ground_truth"]) {
        GroundTruth g;
        g.optimum = amount_field(gt["optimum"], "optimum");
        if (gt["oracle"]) g.oracle = text(gt["oracle"], "oracle");
        if (gt["threshold_permille"]) {
            g.threshold_permille =
                static_cast<unsigned>(std::stoul(text(gt["threshold_permille"], "threshold_permille")));
        }
        sc.ground_truth = g;
    }

    for (const auto& [addr, l] : st.tokens) {
        if (!l.config->is_lp) sc.universe.tokens.push_back(addr);
    }
    std::set<Address> accts(b.accounts().begin(), b.accounts().end());
    accts.insert(sc.cluster.begin(), sc.cluster.end());
    accts.insert(Address::burn());
    sc.names.emplace(Address::burn(), "burn");
    sc.universe.accounts.assign(accts.begin(), accts.end());

    if (const auto rt = root["raw_targets"]) {
        for (const auto& t : rt) sc.universe.raw_targets.push_back(b.resolve(t, "raw_targets", false));
    } else {
        sc.universe.raw_targets = sc.universe.tokens;
        for (const auto& c : sc.universe.contracts) sc.universe.raw_targets.push_back(c);
    }
    return sc;
}

}  // namespace

ScenarioError::ScenarioError(const std::string& msg, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

ScenarioError::ScenarioError(const std::string& prefix, const ScenarioError& inner)
    : std::runtime_error(prefix + inner.what()), line_(inner.line()) {}

std::vector<Address> Universe::all() const {
    std::set<Address> s;
    for (const auto* v : {&tokens, &pairs, &contracts, &accounts, &raw_targets}) s.insert(v->begin(), v->end());
    return {s.begin(), s.end()};
}

std::string Scenario::fingerprint() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(world::state_digest(initial)));
    return name + ":" + buf;
}

std::string Scenario::name_of(const Address& a) const {
    auto it = names.find(a);
    return it == names.end() ? a.hex() : it->second;
}

Address Scenario::resolve(const std::string& label) const {
    for (const auto& [addr, n] : names) {
        if (n == label) return addr;
    }
    if (label.size() == 42 && label.rfind("0x", 0) == 0) return Address::from_hex(label);
    throw ScenarioError("unknown label '" + label + "'");
}

world::TxSequence Scenario::seed_sequence() const {
    world::TxSequence seq;
    seq.txs = victims;
    seq.pricing_token = pricing_tokens.front();
    return seq;
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ScenarioError(origin + ": " + e.msg, e.mark.line + 1);
    }
    try {
        Scenario sc = build(root);
        sc.source = text;
        return sc;
    } catch (const ScenarioError& e) {
        throw ScenarioError(origin + ": ", e);
    } catch (const YAML::Exception& e) {
        throw ScenarioError(origin + ": " + e.msg, e.mark.line + 1);
    } catch (const std::exception& e) {
        throw ScenarioError(origin + ": " + e.what());
    }
}

Scenario load_scenario(const std::string& ref) {
    if (auto src = builtin_source(ref)) return parse_scenario(*src, ref);
    std::ifstream in(ref);
    if (!in) throw ScenarioError("cannot open scenario '" + ref + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), ref);
}

}  // namespace pofuzz::scenarios
