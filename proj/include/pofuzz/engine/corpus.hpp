#pragma once

#include "pofuzz/actions/mutator.hpp"
#include "pofuzz/oracle/classify.hpp"

#include <set>
#include <vector>

namespace pofuzz::engine {

struct CorpusEntry {
    world::TxSequence seq;
    bool is_candidate = false;
    std::set<oracle::Criterion> criteria;
    Signed profit;
    std::uint64_t iteration = 0;  // discovery
};

/// Weighted input pool. Entry 0 is the seed and is never evicted.
class Corpus {
public:
    static constexpr std::size_t kCapacity = 1024;
    static constexpr unsigned kCandidateWeight = 5;

    explicit Corpus(std::size_t capacity = kCapacity);

    /// Appends. Past the capacity the oldest non-candidate goes; with none
    /// left, the oldest candidate of the most common criteria set.
    void add(CorpusEntry e);
    const CorpusEntry& select(actions::Rng& rng) const;

    /// Records an outcome signature; true the first time it is seen.
    bool novel(std::uint64_t signature);

    std::size_t size() const { return entries_.size(); }
    const std::vector<CorpusEntry>& entries() const { return entries_; }
    static unsigned weight(const CorpusEntry& e) { return e.is_candidate ? kCandidateWeight : 1; }

private:
    std::vector<CorpusEntry> entries_;
    std::set<std::uint64_t> seen_;
    std::size_t capacity_;
};

/// Digest of everything in a sequence (structure, arguments, pricing token).
std::uint64_t sequence_digest(const world::TxSequence& seq);

/// Per-repetition revert pattern plus the (token, from, to) shape of every
/// transfer; amounts are ignored.
std::uint64_t outcome_signature(const world::ExecutionReceipt& receipt);

}  // namespace pofuzz::engine
