#include "pofuzz/engine/corpus.hpp"

#include "pofuzz/world/digest.hpp"

#include <map>
#include <stdexcept>

namespace pofuzz::engine {

namespace {

void add_tx(world::Digest& d, const world::Transaction& tx);

void add_spec(world::Digest& d, const actions::ActionSpec& s) {
    d.add(static_cast<std::uint64_t>(s.kind));
    d.add(s.token);
    d.add(s.counter);
    d.add(s.pair);
    d.add(static_cast<std::uint64_t>(s.percentage.value()));
    d.add(static_cast<std::uint64_t>(s.add));
    d.add(static_cast<std::uint64_t>(s.borrow_token0));
    d.add(static_cast<std::uint64_t>(s.op));
    d.add(s.macro);
    d.add(static_cast<std::uint64_t>(s.params.size()));
    for (const auto& p : s.params) d.add(p);
    d.add(static_cast<std::uint64_t>(s.body.size()));
    for (const auto& t : s.body) add_tx(d, t);
}

void add_tx(world::Digest& d, const world::Transaction& tx) {
    d.add(tx.sender);
    d.add(tx.value);
    d.add(static_cast<std::uint64_t>(tx.repeat));
    d.add(static_cast<std::uint64_t>(tx.pinned));
    if (const auto* raw = std::get_if<world::RawCall>(&tx.call)) {
        d.add(std::uint64_t{0});
        d.add(raw->target);
        d.add(raw->function);
        for (const auto& a : raw->args) {
            if (const auto* addr = std::get_if<world::Address>(&a)) {
                d.add(*addr);
            } else {
                d.add(std::get<Amount>(a));
            }
        }
    } else {
        d.add(std::uint64_t{1});
        add_spec(d, std::get<actions::ActionSpec>(tx.call));
    }
}

}  // namespace

Corpus::Corpus(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ < 2) throw std::invalid_argument("corpus capacity must be at least 2");
}

void Corpus::add(CorpusEntry e) {
    entries_.push_back(std::move(e));
    if (entries_.size() <= capacity_) return;
    std::size_t victim = 0;
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        if (!entries_[i].is_candidate) {
            victim = i;
            break;
        }
    }
    if (victim == 0) {
        // all candidates: drop the oldest one of the most common criteria set
        std::map<std::set<oracle::Criterion>, std::size_t> count;
        for (std::size_t i = 1; i < entries_.size(); ++i) ++count[entries_[i].criteria];
        std::size_t most = 0;
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            if (count[entries_[i].criteria] > most) {
                most = count[entries_[i].criteria];
                victim = i;
            }
        }
    }
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
}

const CorpusEntry& Corpus::select(actions::Rng& rng) const {
    if (entries_.empty()) throw std::logic_error("select from an empty corpus");
    std::uint64_t total = 0;
    for (const auto& e : entries_) total += weight(e);
    std::uint64_t roll = actions::uniform_index(rng, total);
    for (const auto& e : entries_) {
        if (roll < weight(e)) return e;
        roll -= weight(e);
    }
    return entries_.back();
}

bool Corpus::novel(std::uint64_t signature) { return seen_.insert(signature).second; }

std::uint64_t sequence_digest(const world::TxSequence& seq) {
    world::Digest d;
    d.add(seq.pricing_token);
    d.add(static_cast<std::uint64_t>(seq.txs.size()));
    for (const auto& tx : seq.txs) add_tx(d, tx);
    return d.h;
}

std::uint64_t outcome_signature(const world::ExecutionReceipt& receipt) {
    world::Digest d;
    for (const auto& o : receipt.outcomes) {
        d.add(static_cast<std::uint64_t>(o.tx_index * 2 + (o.reverted ? 1 : 0)));
    }
    std::set<std::tuple<world::Address, world::Address, world::Address>> shapes;
    for (const auto& e : receipt.events) shapes.emplace(e.token, e.from, e.to);
    for (const auto& [t, f, to] : shapes) {
        d.add(t);
        d.add(f);
        d.add(to);
    }
    return d.h;
}

}  // namespace pofuzz::engine
