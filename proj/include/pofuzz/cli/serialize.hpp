#pragma once

#include "pofuzz/engine/campaign.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pofuzz::cli {

inline constexpr const char* kReportFormat = "pofuzz-report/1";
inline constexpr const char* kProofFormat = "pofuzz-proof/1";

/// Malformed report or proof document.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunReport {
    std::string scenario;
    std::string scenario_fingerprint;
    std::map<std::string, std::string> labels;  // address hex -> scenario name
    std::vector<engine::CampaignResult> runs;   // seed order
    std::string generated_at;                   // timestamp block

    bool found_proof() const;
    bool operator==(const RunReport&) const = default;
};

/// Report JSON. Amounts are decimal strings; wall-clock data lives under
/// the top-level "timestamp" key only.
std::string to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

std::string proof_to_json(const engine::ProofOfProfit& proof);
engine::ProofOfProfit proof_from_json(const std::string& text);

/// Every proof in a proof document or a report document.
std::vector<engine::ProofOfProfit> proofs_from_document(const std::string& text);

/// The report text with the "timestamp" block removed; equal runs give
/// equal strings.
std::string strip_timestamp(const std::string& report_json);

/// One "run,sgd_run,evaluation,best_profit" row per convergence point.
std::string convergence_csv(const RunReport& report);

}  // namespace pofuzz::cli
