#include "bbreg/modules.hpp"

namespace bbreg {

GModule::GModule(CoeffRing ring, Group group, std::vector<int> exps, ActFn act)
    : ring_(std::move(ring)), group_(std::move(group)), exps_(std::move(exps)),
      act_(std::move(act)) {
  for (int e : exps_)
    if (e < 1 || e > ring_.m()) throw error("module component exponent out of range");
  if (!act_) throw error("module action callback missing");
}

Vec GModule::act(const GroupElem& s, const Vec& v) const {
  if ((i64)v.size() != (i64)rank() * ring_.d())
    throw dimension_mismatch_error("module vector has wrong length");
  if (!group_.contains(s)) throw error("module action: element not in acting group");
  return act_(s, v);
}

Vec GModule::act_zgr(const ZGroupRingElem& a, const Vec& v) const {
  if (a.group() != group_) throw ring_mismatch_error("module action across groups");
  Vec out = zero();
  for (const auto& [idx, c] : a.terms()) {
    Vec w = act(group_.elem_at(idx), v);
    vecops::scale_int_in_place(ring_, w, c);
    vecops::add_in_place(ring_, out, w);
  }
  return out;
}

Vec GModule::act_gr(const GroupRingElem& a, const Vec& v) const {
  if (a.group() != group_ || a.ring() != ring_)
    throw ring_mismatch_error("module action across groups/rings");
  Vec out = zero();
  for (const auto& [idx, c] : a.terms()) {
    Vec w = act(group_.elem_at(idx), v);
    vecops::scale_in_place(ring_, w, c);
    vecops::add_in_place(ring_, out, w);
  }
  return out;
}

GModule regular_module(const CoeffRing& ring, const Group& actors, const Group& carrier,
                       int copies) {
  if (copies < 1) throw error("regular module needs at least one copy");
  const i64 h = carrier.order();
  const int d = ring.d();
  std::vector<int> exps((size_t)(h * copies), ring.m());
  Group car = carrier;
  auto act = [car, h, d, copies](const GroupElem& s, const Vec& v) {
    std::vector<i64> perm = left_mul_perm(car, project(s, car));
    Vec out(v.size(), 0);
    for (int c = 0; c < copies; ++c)
      for (i64 i = 0; i < h; ++i)
        for (int k = 0; k < d; ++k)
          out[((c * h + perm[i]) * d) + k] = v[((c * h + i) * d) + k];
    return out;
  };
  return GModule(ring, actors, std::move(exps), std::move(act));
}

}  // namespace bbreg
