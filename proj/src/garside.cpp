#include "coxaut/garside.hpp"

#include <algorithm>
#include <unordered_set>

#include "coxaut/cone.hpp"

namespace coxaut {

namespace {

std::vector<RootId> sorted_union(const std::vector<RootId>& a, const std::vector<RootId>& b) {
  std::vector<RootId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<RootId> sorted_difference(const std::vector<RootId>& a, const std::vector<RootId>& b) {
  std::vector<RootId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool has_bad_pair(const CoxeterSystem& sys, const std::vector<RootId>& a, const std::vector<RootId>& b) {
  for (RootId x : a) {
    for (RootId y : b) {
      if (sys.form_at_most_minus_one(x, y)) return true;
    }
  }
  return false;
}

int default_cap(std::size_t max_length) { return static_cast<int>(2 * max_length + 8); }

}  // namespace

JoinResult join(const CoxeterSystem& sys, const Element& u, const Element& v, int cap) {
  if (weak_leq(v, u)) return u;
  if (weak_leq(u, v)) return v;
  // A finite inversion set never holds two roots with B <= -1.
  const auto only_u = sorted_difference(u.inversions(), v.inversions());
  const auto only_v = sorted_difference(v.inversions(), u.inversions());
  if (has_bad_pair(sys, only_u, only_v)) return NotFoundWithinCap{cap, true};

  const std::vector<RootId> gens = sorted_union(u.inversions(), v.inversions());
  std::vector<RootVector> gen_vectors;
  std::unordered_map<RootId, bool> verdicts;  // cone tests already made
  Element w = u;
  for (;;) {
    if (weak_leq(v, w)) return w;
    if (static_cast<int>(w.length()) >= cap) return NotFoundWithinCap{cap, false};
    int step = -1;
    std::vector<std::pair<int, RootId>> hard;
    for (int s = 0; s < sys.rank() && step < 0; ++s) {
      SignedRoot r = apply(sys, w, {sys.simple_root(s), false});
      if (r.negative) continue;
      if (v.contains_root(r.id)) {
        step = s;
      } else {
        hard.emplace_back(s, r.id);
      }
    }
    for (std::size_t k = 0; k < hard.size() && step < 0; ++k) {
      const auto [s, r] = hard[k];
      auto it = verdicts.find(r);
      if (it == verdicts.end()) {
        bool in_cone = !has_bad_pair(sys, {r}, gens);
        if (in_cone) {
          if (gen_vectors.empty()) {
            for (RootId g : gens) gen_vectors.push_back(sys.root(g));
          }
          in_cone = cone_member(sys, sys.root(r), gen_vectors);
        }
        it = verdicts.emplace(r, in_cone).first;
      }
      if (it->second) step = s;
    }
    if (step < 0) return NotFoundWithinCap{cap, true};
    w = mult_right(sys, w, step);
  }
}

const char* to_string(ShadowOrigin o) {
  switch (o) {
    case ShadowOrigin::Explicit:
      return "explicit";
    case ShadowOrigin::ClosureOfS:
      return "closure-of-S";
    case ShadowOrigin::Low:
      return "low";
    case ShadowOrigin::ParabolicImage:
      return "parabolic-image";
    case ShadowOrigin::Intersection:
      return "intersection";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Shadow:
      return "shadow";
    case Verdict::NotShadow:
      return "not-shadow";
    case Verdict::IndeterminateAtCap:
      return "indeterminate-at-cap";
  }
  return "?";
}

Shadow::Shadow(std::vector<Element> elements, ShadowOrigin origin) : origin_(origin) {
  std::sort(elements.begin(), elements.end(), Element::shortlex_less);
  for (auto& w : elements) {
    if (index_.count(w)) continue;
    index_.emplace(w, static_cast<int>(elements_.size()));
    elements_.push_back(std::move(w));
  }
}

int Shadow::index_of(const Element& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? -1 : it->second;
}

Element project(const Shadow& B, const Element& w) {
  if (auto i = B.index_of(w); i >= 0) return B.elements()[i];
  const Element* best = nullptr;
  bool tie = false;
  for (const auto& g : B.elements()) {
    if (g.length() > w.length()) break;
    if (!weak_leq(g, w)) continue;
    if (best == nullptr || g.length() > best->length()) {
      best = &g;
      tie = false;
    } else if (g.length() == best->length()) {
      tie = true;
    }
  }
  if (best == nullptr) throw Error(ErrorKind::ShadowViolation, "no prefix of " + word_to_string(w.word()) + " in B");
  if (tie) {
    throw Error(ErrorKind::ShadowViolation, "longest prefix of " + word_to_string(w.word()) + " in B is not unique");
  }
  return *best;
}

ShadowVerdict verify_shadow(const CoxeterSystem& sys, const Shadow& B, int cap) {
  ShadowVerdict out;
  out.cap = cap > 0 ? cap : default_cap(B.max_length());
  if (!B.contains(Element{})) {
    out.verdict = Verdict::NotShadow;
    out.reason = "identity missing";
    return out;
  }
  for (int s = 0; s < sys.rank(); ++s) {
    Element g = element_from_word(sys, {s});
    if (!B.contains(g)) {
      out.verdict = Verdict::NotShadow;
      out.reason = "missing generator " + std::to_string(s + 1);
      out.witness = {g};
      return out;
    }
  }
  for (const auto& b : B.elements()) {
    for (int s : b.left_descents().members()) {
      Element sb = mult_left(sys, s, b);
      if (!B.contains(sb)) {
        out.verdict = Verdict::NotShadow;
        out.reason = "suffix " + word_to_string(sb.word()) + " of " + word_to_string(b.word()) + " missing";
        out.witness = {b, sb};
        return out;
      }
    }
  }
  bool indeterminate = false;
  const auto& el = B.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      JoinResult r = join(sys, el[i], el[j], out.cap);
      if (auto* w = std::get_if<Element>(&r)) {
        if (!B.contains(*w)) {
          out.verdict = Verdict::NotShadow;
          out.reason = "join of " + word_to_string(el[i].word()) + " and " + word_to_string(el[j].word()) +
                       " is " + word_to_string(w->word()) + ", not in B";
          out.witness = {el[i], el[j], *w};
          return out;
        }
      } else if (!std::get<NotFoundWithinCap>(r).certified_unbounded) {
        if (!indeterminate) out.witness = {el[i], el[j]};
        indeterminate = true;
      }
    }
  }
  if (indeterminate) {
    out.verdict = Verdict::IndeterminateAtCap;
    out.reason = "join search reached the cap " + std::to_string(out.cap);
  }
  return out;
}

ClosureResult garside_closure(const CoxeterSystem& sys, const std::vector<Element>& X, const ClosureOptions& opts) {
  std::vector<Element> elems;
  std::unordered_set<Element, ElementHash> seen;
  std::size_t max_len = 0;
  auto add = [&](const Element& w) {
    if (!seen.insert(w).second) return;
    max_len = std::max(max_len, w.length());
    elems.push_back(w);
    if (elems.size() > opts.budget) {
      throw Error(ErrorKind::BudgetExceeded,
                  "Garside closure exceeded the budget of " + std::to_string(opts.budget) + " elements");
    }
  };
  add(Element{});
  for (int s = 0; s < sys.rank(); ++s) add(element_from_word(sys, {s}));
  for (const auto& x : X) add(x);

  ClosureResult out;
  std::vector<std::pair<std::size_t, std::size_t>> uncertified;
  std::size_t suffix_done = 0;
  std::size_t joined = 0;  // pairs (i, j) with j < joined are done
  auto cap_now = [&] { return opts.cap > 0 ? opts.cap : default_cap(max_len); };

  auto saturate = [&] {
    while (suffix_done < elems.size() || joined < elems.size()) {
      // Suffixes first: they are cheap and shrink the join workload.
      while (suffix_done < elems.size()) {
        const Element w = elems[suffix_done++];
        for (int s : w.left_descents().members()) add(mult_left(sys, s, w));
      }
      if (joined < elems.size()) {
        const std::size_t j = joined++;
        for (std::size_t i = 0; i < j; ++i) {
          const int cap = cap_now();
          out.cap_used = std::max(out.cap_used, cap);
          JoinResult r = join(sys, elems[i], elems[j], cap);
          if (auto* w = std::get_if<Element>(&r)) {
            add(*w);
          } else if (!std::get<NotFoundWithinCap>(r).certified_unbounded) {
            uncertified.emplace_back(i, j);
          }
        }
      }
    }
  };
  saturate();
  // Stability: rerun the undecided pairs with a larger cap.
  for (;;) {
    auto pending = std::move(uncertified);
    uncertified.clear();
    bool grew = false;
    for (auto [i, j] : pending) {
      const int cap = cap_now() + 4;
      out.cap_used = std::max(out.cap_used, cap);
      JoinResult r = join(sys, elems[i], elems[j], cap);
      if (auto* w = std::get_if<Element>(&r)) {
        if (!seen.count(*w)) grew = true;
        add(*w);
      } else if (!std::get<NotFoundWithinCap>(r).certified_unbounded) {
        uncertified.emplace_back(i, j);
      }
    }
    if (!grew) break;
    out.cap_stable = false;
    saturate();
  }
  out.uncertified_pairs = uncertified.size();
  out.shadow = Shadow(std::move(elems), X.empty() ? ShadowOrigin::ClosureOfS : ShadowOrigin::Explicit);
  return out;
}

ClosureResult smallest_shadow(const CoxeterSystem& sys, const ClosureOptions& opts) {
  return garside_closure(sys, {}, opts);
}

bool is_low(const SmallRootTable& table, const Element& w) {
  const CoxeterSystem& sys = table.system();
  std::vector<RootVector> gens;
  std::vector<RootId> rest;
  for (RootId r : w.inversions()) {
    if (table.find(r)) {
      gens.push_back(sys.root(r));
    } else {
      rest.push_back(r);
    }
  }
  for (RootId r : rest) {
    if (!cone_member(sys, sys.root(r), gens)) return false;
  }
  return true;
}

Shadow low_elements(const SmallRootTable& table, std::size_t budget) {
  const CoxeterSystem& sys = table.system();
  std::vector<Element> out{Element{}};
  std::unordered_set<Element, ElementHash> seen{Element{}};
  std::size_t level_begin = 0;
  while (level_begin < out.size()) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      const GeneratorSet d = out[i].left_descents();
      for (int s = 0; s < sys.rank(); ++s) {
        if (d.contains(s)) continue;
        Element next = mult_left(sys, s, out[i]);
        if (!seen.insert(next).second) continue;
        if (!is_low(table, next)) continue;
        out.push_back(std::move(next));
        if (out.size() > budget) {
          throw Error(ErrorKind::BudgetExceeded, "low-element search exceeded " + std::to_string(budget));
        }
      }
    }
    level_begin = level_end;
  }
  return Shadow(std::move(out), ShadowOrigin::Low);
}

Shadow parabolic_image(const CoxeterSystem& sys, const Shadow& B, GeneratorSet I) {
  std::vector<Element> out;
  out.reserve(B.size());
  for (const auto& b : B.elements()) out.push_back(coset_split(sys, b, I).parabolic);
  return Shadow(std::move(out), ShadowOrigin::ParabolicImage);
}

Shadow intersect_parabolic(const Shadow& B, GeneratorSet I) {
  std::vector<Element> out;
  for (const auto& b : B.elements()) {
    if (std::all_of(b.word().begin(), b.word().end(), [&](int s) { return I.contains(s); })) out.push_back(b);
  }
  return Shadow(std::move(out), ShadowOrigin::Intersection);
}

ParabolicClosureCheck check_parabolic_closure(const CoxeterSystem& sys, const Shadow& B, GeneratorSet I,
                                              const ClosureOptions& opts) {
  ParabolicClosureCheck out;
  const ClosureResult c = garside_closure(sys, B.elements(), opts);
  out.cap_stable = c.cap_stable;
  out.restricted = intersect_parabolic(c.shadow, I);
  const Shadow b_in_I = intersect_parabolic(B, I);
  out.equal = b_in_I.size() == B.size() && out.restricted.size() == B.size() &&
              std::all_of(B.elements().begin(), B.elements().end(),
                          [&](const Element& b) { return out.restricted.contains(b); });
  return out;
}

}  // namespace coxaut
