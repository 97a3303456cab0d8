#include "geotsp/engine.hpp"

#include <cassert>
#include <stdexcept>

namespace geotsp {

Domain::Domain(int n, int owner) : words_((n + 63) / 64, 0), size_(0), n_(n) {
  for (int v = 0; v < n; ++v) {
    if (v != owner) insert(v);
  }
}

int Domain::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return static_cast<int>(w * 64 + std::countr_zero(words_[w]));
  }
  return -1;
}

std::vector<int> Domain::values() const {
  std::vector<int> out;
  out.reserve(size_);
  for_each([&](int v) { out.push_back(v); });
  return out;
}

VarStore::VarStore(int n) {
  domains_.reserve(n);
  for (int i = 0; i < n; ++i) domains_.emplace_back(n, i);
}

RemoveResult VarStore::remove_value(int i, int v) {
  Domain& d = domains_[i];
  if (v < 0 || v >= d.universe() || !d.contains(v)) return RemoveResult::Absent;
  d.erase(v);
  trail_.push_back({i, v});
  if (d.empty()) return RemoveResult::Failure;
  if (listener_ != nullptr) listener_->on_removed(i, v, d.size());
  return RemoveResult::Removed;
}

PropStatus VarStore::assign(int i, int v) {
  const Domain& d = domains_[i];
  if (!d.contains(v)) throw std::logic_error("assign: value not in domain");
  for (int u : d.values()) {
    if (u != v && remove_value(i, u) == RemoveResult::Failure) return PropStatus::Failure;
  }
  return PropStatus::Quiescent;
}

bool VarStore::all_fixed() const {
  for (const auto& d : domains_) {
    if (!d.fixed()) return false;
  }
  return true;
}

int VarStore::new_cell(int initial) {
  cells_.push_back(initial);
  return static_cast<int>(cells_.size()) - 1;
}

void VarStore::set_cell(int id, int value) {
  if (cells_[id] == value) return;
  trail_.push_back({-(id + 1), cells_[id]});
  cells_[id] = value;
}

void VarStore::push_level() { marks_.push_back(trail_.size()); }

void VarStore::pop_level() {
  if (marks_.empty()) throw std::logic_error("pop_level at root");
  const std::size_t mark = marks_.back();
  marks_.pop_back();
  while (trail_.size() > mark) {
    const TrailEntry e = trail_.back();
    trail_.pop_back();
    if (e.slot >= 0) {
      domains_[e.slot].insert(e.value);
    } else {
      cells_[-(e.slot + 1)] = e.value;
    }
  }
}

Space::Space(int n) : store_(n), on_removal_(n), on_fixed_(n) { store_.set_listener(this); }

Propagator* Space::post(std::unique_ptr<Propagator> p) {
  Propagator* raw = p.get();
  props_.push_back(std::move(p));
  schedule(raw);
  return raw;
}

void Space::subscribe(Propagator* p, int var, Event ev) {
  (ev == Event::Removal ? on_removal_ : on_fixed_)[var].push_back(p);
}

void Space::subscribe_all(Propagator* p, Event ev) {
  for (int i = 0; i < size(); ++i) subscribe(p, i, ev);
}

void Space::schedule(Propagator* p) {
  if (p->queued_) return;
  p->queued_ = true;
  queue_.push_back(p);
}

void Space::clear_queue() {
  for (Propagator* q : queue_) q->queued_ = false;
  queue_.clear();
}

void Space::on_removed(int var, int /*value*/, int new_size) {
  if (running_ != nullptr) {
    ++counters_.deletions[static_cast<int>(running_->kind())];
  }
  for (Propagator* p : on_removal_[var]) schedule(p);
  if (new_size == 1) {
    for (Propagator* p : on_fixed_[var]) schedule(p);
  }
}

void Space::shuffle_queue(std::uint64_t seed) { shuffle_ = std::make_unique<std::mt19937_64>(seed); }

PropStatus Space::propagate_fixpoint() {
  while (!queue_.empty()) {
    Propagator* p = nullptr;
    if (shuffle_) {
      std::uniform_int_distribution<std::size_t> pick(0, queue_.size() - 1);
      const std::size_t k = pick(*shuffle_);
      p = queue_[k];
      queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      p = queue_.front();
      queue_.pop_front();
    }
    p->queued_ = false;
    running_ = p;
    ++counters_.runs;
    const PropStatus st = p->propagate(*this);
    running_ = nullptr;
    if (st == PropStatus::Failure) {
      ++counters_.failures[static_cast<int>(p->kind())];
      clear_queue();
      return PropStatus::Failure;
    }
  }
  return PropStatus::Quiescent;
}

}  // namespace geotsp
