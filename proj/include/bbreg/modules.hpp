#pragma once

#include <functional>

#include "bbreg/groupring.hpp"

namespace bbreg {

// A finite R-module M = ⨁_i R/p^{e_i} with an action of a fixed group,
// given by a coordinate shape and an action callback on flat vectors.
class GModule {
 public:
  using ActFn = std::function<Vec(const GroupElem&, const Vec&)>;

  GModule(CoeffRing ring, Group group, std::vector<int> exps, ActFn act);

  const CoeffRing& ring() const { return ring_; }
  const Group& group() const { return group_; }
  int rank() const { return static_cast<int>(exps_.size()); }
  const std::vector<int>& exps() const { return exps_; }

  Vec zero() const { return vecops::zero(ring_, rank()); }
  Vec act(const GroupElem& s, const Vec& v) const;
  // linear extensions of the action to group-ring coefficients
  Vec act_zgr(const ZGroupRingElem& a, const Vec& v) const;
  Vec act_gr(const GroupRingElem& a, const Vec& v) const;

 private:
  CoeffRing ring_;
  Group group_;
  std::vector<int> exps_;
  ActFn act_;
};

// (R[H])^copies with `actors` acting through the projection actors -> H
GModule regular_module(const CoeffRing& ring, const Group& actors, const Group& carrier,
                       int copies);

}  // namespace bbreg
