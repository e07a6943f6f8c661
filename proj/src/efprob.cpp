#include "efalloc/efprob.hpp"

namespace efalloc {

namespace {

// True iff agent i, holding w[i], ranks it above every other allocated house.
bool tops_allocated(const LinearOrder& order, const Allocation& w, AgentId i) {
  const auto own = order.position(w[i]);
  for (AgentId j = 0; j < w.size(); ++j)
    if (j != i && order.position(w[j]) < own) return false;
  return true;
}

AgentEnvyReport lottery_report(const LotteryPrefs& prefs, const Allocation& w) {
  AgentEnvyReport r;
  r.overall = Prob::one();
  for (AgentId i = 0; i < w.size(); ++i) {
    Prob q;
    for (const auto& [weight, order] : prefs.agents[i])
      if (tops_allocated(order, w, i)) q += weight;
    r.overall *= q;
    r.non_envy.push_back(std::move(q));
  }
  return r;
}

AgentEnvyReport compact_report(const CompactPrefs& prefs, const Allocation& w) {
  AgentEnvyReport r;
  r.overall = Prob::one();
  r.tied_with.resize(w.size());
  for (AgentId i = 0; i < w.size(); ++i) {
    const WeakOrder& order = prefs.agents[i];
    bool envious = false;
    std::vector<AgentId> tied;
    for (AgentId j = 0; j < w.size(); ++j) {
      if (order.strictly_prefers(w[j], w[i])) {
        envious = true;
        break;
      }
      if (order.indifferent(w[j], w[i])) tied.push_back(j);
    }
    if (envious) {
      r.non_envy.push_back(Prob::zero());
      r.overall = Prob::zero();
      continue;
    }
    Prob q = reciprocal(tied.size());
    r.overall *= q;
    r.non_envy.push_back(std::move(q));
    r.tied_with[i] = std::move(tied);
  }
  return r;
}

AgentEnvyReport pairwise_report(const PairwisePrefs& prefs, const Allocation& w) {
  AgentEnvyReport r;
  r.overall = Prob::one();
  for (AgentId i = 0; i < w.size(); ++i) {
    Prob q = Prob::one();
    for (AgentId j = 0; j < w.size() && !q.is_zero(); ++j)
      if (j != i) q *= prefs.agents[i].at(w[i], w[j]);
    r.overall *= q;
    r.non_envy.push_back(std::move(q));
  }
  return r;
}

AgentEnvyReport joint_report(const JointPrefs& prefs, const Allocation& w) {
  AgentEnvyReport r;
  r.non_envy.assign(w.size(), Prob::zero());
  for (const auto& [weight, orders] : prefs.profiles) {
    bool all = true;
    for (AgentId i = 0; i < w.size(); ++i) {
      if (tops_allocated(orders[i], w, i))
        r.non_envy[i] += weight;
      else
        all = false;
    }
    if (all) r.overall += weight;
  }
  return r;
}

}  // namespace

AgentEnvyReport ef_report(const Instance& inst, const Allocation& w) {
  check_allocation(inst, w);
  switch (inst.model()) {
    case Model::Lottery: return lottery_report(inst.lottery(), w);
    case Model::Compact: return compact_report(inst.compact(), w);
    case Model::Joint: return joint_report(inst.joint(), w);
    case Model::Pairwise: return pairwise_report(inst.pairwise(), w);
  }
  return {};
}

Prob ef_prob(const Instance& inst, const Allocation& w) { return ef_report(inst, w).overall; }

bool is_possibly_ef(const Instance& inst, const Allocation& w) { return !ef_prob(inst, w).is_zero(); }

bool is_certainly_ef(const Instance& inst, const Allocation& w) { return ef_prob(inst, w).is_one(); }

}  // namespace efalloc
