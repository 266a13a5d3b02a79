#pragma once

#include "pofuzz/world/transaction.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pofuzz::scenarios {

using world::Address;

/// Parse or referential-validation failure. `line` is 1-based, 0 when the
/// problem has no source position.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& msg, int line = 0);
    /// Same error with `prefix` prepended to the message.
    ScenarioError(const std::string& prefix, const ScenarioError& inner);
    int line() const { return line_; }

private:
    int line_;
};

struct GroundTruth {
    Amount optimum;
    std::string oracle;
    /// Acceptance threshold as a fraction of the optimum, in permille.
    unsigned threshold_permille = 1000;
};

/// Addresses the mutator may draw arguments from.
struct Universe {
    std::vector<Address> tokens;     // non-LP tokens
    std::vector<Address> pairs;
    std::vector<Address> contracts;  // router and scenario contracts
    std::vector<Address> accounts;   // attacker cluster, victims, burn address
    std::vector<Address> raw_targets;

    /// Every address above, deduplicated and sorted.
    std::vector<Address> all() const;
};

struct Scenario {
    std::string name;
    std::string description;
    Address attacker;
    std::vector<Address> cluster;  // attacker first, then attacker contracts
    std::vector<Address> pricing_tokens;
    std::vector<world::Transaction> victims;
    std::optional<GroundTruth> ground_truth;
    bool expected_failure = false;
    Universe universe;
    std::map<Address, std::string> names;
    world::WorldState initial;
    std::string source;  // the scenario text it was parsed from

    /// Stable identity of the scenario used by replay validation.
    std::string fingerprint() const;
    /// Human-readable name of an address, or its hex form.
    std::string name_of(const Address& a) const;
    /// Inverse of name_of; throws ScenarioError for unknown labels.
    Address resolve(const std::string& label) const;

    /// Seed input: the victim transactions, pinned, priced in pricing_tokens[0].
    world::TxSequence seed_sequence() const;
};

/// Parses scenario text. `origin` names the source in diagnostics.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<scenario>");

/// Loads a scenario file, or a built-in by name when `ref` names one.
Scenario load_scenario(const std::string& ref);

/// The five vulnerable case-study scenarios.
std::vector<Scenario> builtin_corpus();
/// Controls: an invulnerable market and the staking-id expected failure.
std::vector<Scenario> builtin_controls();
std::vector<std::string> builtin_names();
std::optional<std::string> builtin_source(const std::string& name);

}  // namespace pofuzz::scenarios
