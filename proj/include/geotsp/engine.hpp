#pragma once

#include <bit>
#include <cstdint>
#include <deque>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace geotsp {

/// Candidate successor set of one vertex: a bitset over {0..n-1}.
class Domain {
 public:
  Domain() = default;
  /// Full domain {0..n-1} \ {owner}.
  Domain(int n, int owner);

  bool contains(int v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool fixed() const { return size_ == 1; }
  int universe() const { return n_; }

  /// Smallest member; -1 when empty.
  int first() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        f(static_cast<int>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> values() const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  friend class VarStore;
  void erase(int v) {
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    --size_;
  }
  void insert(int v) {
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
    ++size_;
  }

  std::vector<std::uint64_t> words_;
  int size_ = 0;
  int n_ = 0;
};

enum class RemoveResult { Removed, Absent, Failure };
enum class PropStatus { Quiescent, Failure };

/// Receives domain events from a VarStore.
class DomainListener {
 public:
  virtual ~DomainListener() = default;
  virtual void on_removed(int var, int value, int new_size) = 0;
};

/// Successor variables Next_0..Next_{n-1} plus trailed integer cells, with
/// decision levels.  pop_level() restores every domain and cell exactly.
class VarStore {
 public:
  explicit VarStore(int n);

  int size() const { return static_cast<int>(domains_.size()); }
  const Domain& domain(int i) const { return domains_[i]; }
  const std::vector<Domain>& domains() const { return domains_; }

  /// Removes v from D(i).  Failure leaves D(i) empty (and trailed); the caller
  /// is expected to backtrack.
  RemoveResult remove_value(int i, int v);

  /// Reduces D(i) to {v}.  Requires v in D(i).
  PropStatus assign(int i, int v);

  bool all_fixed() const;

  // Trailed integer cells.
  int new_cell(int initial);
  int cell(int id) const { return cells_[id]; }
  void set_cell(int id, int value);

  void push_level();
  void pop_level();
  int level() const { return static_cast<int>(marks_.size()); }
  std::size_t trail_size() const { return trail_.size(); }

  void set_listener(DomainListener* listener) { listener_ = listener; }

 private:
  struct TrailEntry {
    int slot;  // >= 0: variable index; < 0: cell -(slot + 1)
    int value;
  };

  std::vector<Domain> domains_;
  std::vector<int> cells_;
  std::vector<TrailEntry> trail_;
  std::vector<std::size_t> marks_;
  DomainListener* listener_ = nullptr;
};

/// Propagator categories, used for deletion accounting.
enum class PropKind { AllDifferent, Circuit, Nocross, Clockwise, Objective, Other };
inline constexpr int kPropKinds = 6;

class Space;

class Propagator {
 public:
  explicit Propagator(PropKind kind) : kind_(kind) {}
  virtual ~Propagator() = default;

  virtual PropStatus propagate(Space& space) = 0;

  PropKind kind() const { return kind_; }

 private:
  friend class Space;
  PropKind kind_;
  bool queued_ = false;
};

enum class Event { Removal, Fixed };

struct PropagationCounters {
  std::uint64_t deletions[kPropKinds] = {};
  std::uint64_t failures[kPropKinds] = {};
  std::uint64_t runs = 0;

  std::uint64_t deletions_of(PropKind k) const { return deletions[static_cast<int>(k)]; }
  std::uint64_t failures_of(PropKind k) const { return failures[static_cast<int>(k)]; }
};

/// A VarStore together with its propagators and a FIFO propagation queue.
/// Single-threaded; separate Spaces are independent.
class Space : public DomainListener {
 public:
  explicit Space(int n);
  Space(const Space&) = delete;
  Space& operator=(const Space&) = delete;

  VarStore& store() { return store_; }
  const VarStore& store() const { return store_; }
  int size() const { return store_.size(); }
  const Domain& domain(int i) const { return store_.domain(i); }

  /// Takes ownership; the propagator is scheduled once.
  Propagator* post(std::unique_ptr<Propagator> p);
  void subscribe(Propagator* p, int var, Event ev);
  void subscribe_all(Propagator* p, Event ev);
  void schedule(Propagator* p);
  void clear_queue();

  RemoveResult remove_value(int i, int v) { return store_.remove_value(i, v); }
  PropStatus assign(int i, int v) { return store_.assign(i, v); }

  /// Runs queued propagators until the queue drains or one fails.  On failure
  /// the queue is cleared.
  PropStatus propagate_fixpoint();

  /// When set, the next queued propagator is drawn at random instead of FIFO.
  void shuffle_queue(std::uint64_t seed);

  bool queue_empty() const { return queue_.empty(); }
  const PropagationCounters& counters() const { return counters_; }

  void on_removed(int var, int value, int new_size) override;

 private:
  VarStore store_;
  std::vector<std::unique_ptr<Propagator>> props_;
  std::vector<std::vector<Propagator*>> on_removal_;
  std::vector<std::vector<Propagator*>> on_fixed_;
  std::deque<Propagator*> queue_;
  Propagator* running_ = nullptr;
  PropagationCounters counters_;
  std::unique_ptr<std::mt19937_64> shuffle_;
};

}  // namespace geotsp
