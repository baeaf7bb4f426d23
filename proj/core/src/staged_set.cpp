#include "bucklab/staged_set.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "bucklab/buck.hpp"
#include "bucklab/errors.hpp"

namespace bucklab {

struct StagedSet::State {
  Producer producer;
  std::size_t stage_count = 0;
  std::string description;
  std::recursive_mutex mutex;
  std::map<std::size_t, Stage> stages;
  std::map<std::pair<std::size_t, std::uint64_t>, DensityInterval> intervals;
};

StagedSet::StagedSet(Producer producer, std::size_t stage_count, std::string description)
    : state_(std::make_shared<State>()) {
  state_->producer = std::move(producer);
  state_->stage_count = stage_count;
  state_->description = std::move(description);
}

StagedSet StagedSet::constant(const EventuallyPeriodicSet& s, std::size_t stage_count) {
  return StagedSet([s](std::size_t) { return Stage{s, s, Rational(0)}; }, stage_count,
                   "constant " + s.to_string());
}

std::size_t StagedSet::stage_count() const { return state_->stage_count; }

const std::string& StagedSet::description() const { return state_->description; }

const Stage& StagedSet::stage(std::size_t i) const {
  if (i == 0) throw ContractViolation("stages are numbered from 1");
  if (i > state_->stage_count) {
    throw StageBudgetReached("stage " + std::to_string(i) + " requested but " + state_->description +
                             " has " + std::to_string(state_->stage_count) + " stages");
  }
  std::lock_guard lock(state_->mutex);
  if (auto it = state_->stages.find(i); it != state_->stages.end()) return it->second;

  Stage next = state_->producer(i);
  const std::string where = state_->description + " stage " + std::to_string(i);
  if (!is_subset(next.inner, next.outer)) {
    throw InternalConsistencyError(where + ": inner set not contained in outer set");
  }
  const Rational gap = buck(next.outer) - buck(next.inner);
  if (gap > next.error) {
    throw InternalConsistencyError(where + ": density gap " + gap.to_string() + " exceeds certified error " +
                                   next.error.to_string());
  }
  if (i > 1) {
    const Stage& prev = stage(i - 1);
    if (!is_subset(prev.inner, next.inner)) {
      throw InternalConsistencyError(where + ": inner set does not contain the previous inner set");
    }
    if (!is_subset(next.outer, prev.outer)) {
      throw InternalConsistencyError(where + ": outer set not contained in the previous outer set");
    }
  }
  return state_->stages.emplace(i, std::move(next)).first->second;
}

DensityInterval StagedSet::interval(std::size_t i, std::uint64_t k) const {
  if (k == 0) throw ContractViolation("k-fold interval needs k >= 1");
  std::lock_guard lock(state_->mutex);
  const auto key = std::make_pair(i, k);
  if (auto it = state_->intervals.find(key); it != state_->intervals.end()) return it->second;

  const Stage& st = stage(i);
  DensityInterval out{buck(k_fold_sumset(st.inner, k)), buck(k_fold_sumset(st.outer, k))};
  const std::string where = state_->description + " stage " + std::to_string(i) + ", k = " + std::to_string(k);
  if (out.lo > out.hi) {
    throw InternalConsistencyError(where + ": inverted density interval");
  }
  if (i > 1) {
    const DensityInterval prev = interval(i - 1, k);
    if (!out.within(prev)) {
      throw InternalConsistencyError(where + ": interval [" + out.lo.to_string() + ", " + out.hi.to_string() +
                                     "] escapes the previous stage");
    }
  }
  state_->intervals.emplace(key, out);
  return out;
}

}  // namespace bucklab
