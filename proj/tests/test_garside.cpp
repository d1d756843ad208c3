#include <algorithm>
#include <set>

#include "coxaut/cone.hpp"
#include "coxaut/garside.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "properties.hpp"

using namespace coxaut;

namespace {

constexpr int s = 0, t = 1, u = 2;

CoxeterSystem make(const char* name) { return CoxeterSystem(preset_matrix(name), name); }

Shadow shadow_of(const CoxeterSystem& sys, const std::vector<Word>& words) {
  std::vector<Element> xs;
  for (const auto& w : words) xs.push_back(element_from_word(sys, w));
  return Shadow(std::move(xs), ShadowOrigin::Explicit);
}

std::set<Word> words_of(const Shadow& B) {
  std::set<Word> out;
  for (const auto& b : B.elements()) out.insert(b.word());
  return out;
}

bool same(const CoxeterSystem& sys, const Shadow& B, const std::vector<Word>& words) {
  if (B.size() != words.size()) return false;
  return std::all_of(words.begin(), words.end(), [&](const Word& w) { return B.contains(element_from_word(sys, w)); });
}

// The right-angled group with su = us and the other labels infinite.
const char* const kRightAngled = "triangle(inf,2,inf)";
const std::vector<Word> kRemarkShadow{{}, {s}, {t}, {u}, {s, u}, {t, u}, {s, t, u}};

}  // namespace

TEST_CASE("join examples") {
  const CoxeterSystem a2 = make("A2");
  const Element S = element_from_word(a2, {s});
  const Element T = element_from_word(a2, {t});
  const JoinResult with_e = join(a2, S, Element{}, 3);
  REQUIRE(std::holds_alternative<Element>(with_e));
  CHECK(std::get<Element>(with_e) == S);
  const JoinResult st = join(a2, S, T, 3);
  REQUIRE(std::holds_alternative<Element>(st));
  CHECK(std::get<Element>(st) == element_from_word(a2, {s, t, s}));

  const CoxeterSystem inf = make("I2(inf)");
  const JoinResult none = join(inf, element_from_word(inf, {s}), element_from_word(inf, {t}), 12);
  REQUIRE(std::holds_alternative<NotFoundWithinCap>(none));
  CHECK(std::get<NotFoundWithinCap>(none).cap == 12);
  CHECK(std::get<NotFoundWithinCap>(none).certified_unbounded);
}

TEST_CASE("joins agree with exhaustive search") {
  for (const char* name : {"A3", "B3", "affine:A2", "affine:C2", "triangle(3,3,inf)", kRightAngled}) {
    const CoxeterSystem sys = make(name);
    const int radius = 6;
    const auto big = ball(sys, radius);
    const auto small = ball(sys, 3);
    CAPTURE(name);
    for (const auto& a : small) {
      for (const auto& b : small) {
        const auto want = oracle::brute_join(big, a, b);
        const JoinResult got = join(sys, a, b, radius);
        if (want) {
          REQUIRE(std::holds_alternative<Element>(got));
          CHECK(std::get<Element>(got) == *want);
        } else {
          CHECK(std::holds_alternative<NotFoundWithinCap>(got));
        }
      }
    }
  }
}

TEST_CASE("join algebra and inversion sets of joins") {
  for (const char* name : {"affine:C2", "triangle(3,3,inf)", "H3"}) {
    const CoxeterSystem sys = make(name);
    const auto elements = ball(sys, 2);
    const auto big = ball(sys, 5);
    CAPTURE(name);
    auto get = [&](const Element& a, const Element& b) -> std::optional<Element> {
      const JoinResult r = join(sys, a, b, 30);
      if (auto* e = std::get_if<Element>(&r)) return *e;
      return std::nullopt;
    };
    for (const auto& a : elements) {
      CHECK(get(a, a) == a);
      for (const auto& b : elements) {
        const auto ab = get(a, b);
        CHECK(ab == get(b, a));
        if (!ab) continue;
        std::vector<RootId> gens = a.inversions();
        gens.insert(gens.end(), b.inversions().begin(), b.inversions().end());
        for (RootId r : gens) CHECK(ab->contains_root(r));
        for (RootId r : ab->inversions()) CHECK(cone_member(sys, r, gens));
        // Positive roots from elsewhere that lie in the cone are inversions.
        for (const auto& w : big) {
          for (RootId r : w.inversions()) {
            if (!ab->contains_root(r)) CHECK_FALSE(cone_member(sys, r, gens));
          }
        }
        for (const auto& c : elements) {
          const auto bc = get(b, c);
          if (!bc) continue;
          const auto left = get(*ab, c);
          const auto right = get(a, *bc);
          CHECK(left == right);
        }
      }
    }
  }
}

TEST_CASE("projection examples") {
  const CoxeterSystem gp = make(kRightAngled);
  const Shadow B = shadow_of(gp, kRemarkShadow);
  CHECK(project(B, Element{}).is_identity());
  for (const auto& b : B.elements()) CHECK(project(B, b) == b);
  CHECK(project(B, element_from_word(gp, {t, s})) == element_from_word(gp, {t}));

  // Two maximal prefixes of the same length.
  const CoxeterSystem a2 = make("A2");
  const Shadow broken = shadow_of(a2, {{}, {s}, {t}});
  try {
    (void)project(broken, element_from_word(a2, {s, t, s}));
    FAIL("expected a shadow violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ShadowViolation);
  }
}

TEST_CASE("shadow verification") {
  const CoxeterSystem gp = make(kRightAngled);
  CHECK(verify_shadow(gp, shadow_of(gp, kRemarkShadow)).verdict == Verdict::Shadow);

  const CoxeterSystem inf = make("I2(inf)");
  const ShadowVerdict missing = verify_shadow(inf, shadow_of(inf, {{}, {s}}));
  CHECK(missing.verdict == Verdict::NotShadow);
  CHECK(missing.reason.find("generator") != std::string::npos);

  const CoxeterSystem a2 = make("A2");
  CHECK(verify_shadow(a2, Shadow(ball(a2, 3), ShadowOrigin::Explicit)).verdict == Verdict::Shadow);

  // sts = tst has suffixes ts and st; st is missing.
  const ShadowVerdict suffix = verify_shadow(a2, shadow_of(a2, {{}, {s}, {t}, {t, s}, {s, t, s}}));
  CHECK(suffix.verdict == Verdict::NotShadow);
  CHECK(suffix.reason.find("suffix") != std::string::npos);
  const ShadowVerdict no_join = verify_shadow(a2, shadow_of(a2, {{}, {s}, {t}}));
  CHECK(no_join.verdict == Verdict::NotShadow);
  CHECK(no_join.witness.size() >= 2);

  // Bounded pair whose join is missing, in an infinite group.
  const CoxeterSystem ac2 = make("affine:C2");
  const ShadowVerdict v = verify_shadow(ac2, shadow_of(ac2, {{}, {0}, {1}, {2}}));
  CHECK(v.verdict == Verdict::NotShadow);
}

TEST_CASE("smallest shadows") {
  const CoxeterSystem inf = make("I2(inf)");
  const ClosureResult ci = smallest_shadow(inf);
  CHECK(same(inf, ci.shadow, {{}, {s}, {t}}));
  CHECK(ci.cap_stable);

  const CoxeterSystem a2 = make("A2");
  CHECK(smallest_shadow(a2).shadow.size() == 6);

  const CoxeterSystem c2 = make("affine:C2");
  const ClosureResult cc = smallest_shadow(c2);
  CHECK(cc.shadow.size() == 24);
  CHECK(cc.cap_stable);
  CHECK(verify_shadow(c2, cc.shadow).verdict == Verdict::Shadow);

  CHECK(smallest_shadow(make("affine:A2")).shadow.size() == 16);
  CHECK(smallest_shadow(make("affine:G2")).shadow.size() == 41);

  ClosureOptions tight;
  tight.budget = 5;
  try {
    (void)smallest_shadow(c2, tight);
    FAIL("expected budget exhaustion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("closure of a larger seed") {
  const CoxeterSystem c2 = make("affine:C2");
  const ClosureResult base = smallest_shadow(c2);
  std::vector<Element> seed = base.shadow.elements();
  seed.push_back(element_from_word(c2, {0, 1, 2, 1, 0}));
  const ClosureResult bigger = garside_closure(c2, seed);
  CHECK(bigger.shadow.size() >= base.shadow.size());
  CHECK(verify_shadow(c2, bigger.shadow).verdict == Verdict::Shadow);
  for (const auto& b : base.shadow.elements()) CHECK(bigger.shadow.contains(b));
}

TEST_CASE("low elements") {
  const CoxeterSystem inf = make("I2(inf)");
  CHECK(same(inf, low_elements(build_small_roots(inf, 0)), {{}, {s}, {t}}));
  const CoxeterSystem aa2 = make("affine:A2");
  CHECK(low_elements(build_small_roots(aa2, 0)).size() == 16);
  const CoxeterSystem a2 = make("A2");
  CHECK(low_elements(build_small_roots(a2, 0)).size() == 6);
  CHECK_FALSE(is_low(build_small_roots(inf, 0), element_from_word(inf, {s, t})));

  for (const char* name : {"affine:A2", "affine:C2", "affine:G2", "triangle(3,3,inf)", kRightAngled, "B3"}) {
    const CoxeterSystem sys = make(name);
    const SmallRootTable table = build_small_roots(sys, 0);
    const Shadow L = low_elements(table);
    CAPTURE(name);
    CHECK(verify_shadow(sys, L).verdict == Verdict::Shadow);
    // Low elements are determined by their small inversion sets.
    std::set<std::vector<int>> images;
    for (const auto& w : L.elements()) images.insert(small_inversion_set(table, w));
    CHECK(images.size() == L.size());
    // Suffix closed.
    for (const auto& w : L.elements()) {
      for (const auto& v : suffixes(sys, w)) CHECK(L.contains(v));
    }
  }
}

TEST_CASE("parabolic images and intersections") {
  const CoxeterSystem gp = make(kRightAngled);
  const Shadow B = shadow_of(gp, kRemarkShadow);
  const GeneratorSet I = GeneratorSet::of({s, t});
  const Shadow image = parabolic_image(gp, B, I);
  CHECK(same(gp, image, {{}, {s}, {t}, {s, t}}));
  CHECK(same(gp, intersect_parabolic(B, I), {{}, {s}, {t}}));
  CHECK(words_of(parabolic_image(gp, B, gp.generators())) == words_of(B));
  CHECK(words_of(intersect_parabolic(B, gp.generators())) == words_of(B));
  // {e,s,t,st} is a shadow of W_{s,t}, which is an infinite dihedral group.
  const CoxeterSystem inf = make("I2(inf)");
  CHECK(verify_shadow(inf, shadow_of(inf, {{}, {s}, {t}, {s, t}})).verdict == Verdict::Shadow);
}

TEST_CASE("parabolic projection fails to commute for the right-angled example") {
  // pi_B(st) = s since st is not in B, so p_I(pi_B(st)) = s; but st = p_I(stu)
  // lies in p_I(B), so pi_{p_I(B)}(p_I(st)) = st.
  const CoxeterSystem gp = make(kRightAngled);
  const Shadow B = shadow_of(gp, kRemarkShadow);
  REQUIRE(verify_shadow(gp, B).verdict == Verdict::Shadow);
  const GeneratorSet I = GeneratorSet::of({s, t});
  const Element st = element_from_word(gp, {s, t});
  CHECK(coset_split(gp, project(B, st), I).parabolic == element_from_word(gp, {s}));
  CHECK(project(parabolic_image(gp, B, I), coset_split(gp, st, I).parabolic) == st);
  CHECK(props::parabolic_projection_violations(gp, B, 5) == 5);
}

TEST_CASE("closure restricted to a parabolic subgroup") {
  const CoxeterSystem gp = make(kRightAngled);
  const GeneratorSet su = GeneratorSet::of({s, u});
  const ParabolicClosureCheck finite = check_parabolic_closure(gp, shadow_of(gp, {{}, {s}, {u}, {s, u}}), su);
  CHECK(finite.equal);
  CHECK(finite.cap_stable);

  const CoxeterSystem aa2 = make("affine:A2");
  const GeneratorSet I = GeneratorSet::of({0, 1});
  const Shadow whole(ball(aa2, 3), ShadowOrigin::Explicit);
  const Shadow parabolic = intersect_parabolic(whole, I);
  REQUIRE(parabolic.size() == 6);
  CHECK(check_parabolic_closure(aa2, parabolic, I).equal);

  // Not contained in W_I.
  CHECK_FALSE(check_parabolic_closure(aa2, shadow_of(aa2, {{}, {2}}), I).equal);
}

TEST_CASE("projection identities on test shadows") {
  struct Case {
    const char* group;
    int radius;
  };
  for (const Case c : {Case{"A2", 4}, Case{"I2(inf)", 6}, Case{"affine:A2", 5}, Case{"affine:C2", 5},
                       Case{"triangle(3,3,inf)", 4}, Case{kRightAngled, 4}}) {
    const CoxeterSystem sys = make(c.group);
    const Shadow stilde = smallest_shadow(sys).shadow;
    const Shadow low = low_elements(build_small_roots(sys, 0));
    CAPTURE(c.group);
    CHECK(props::projection_violations(sys, stilde, c.radius) == 0);
    CHECK(props::projection_violations(sys, low, c.radius) == 0);
    CHECK(props::composition_violations(sys, stilde, low, c.radius) == 0);
    CHECK(props::parabolic_projection_violations(sys, low, c.radius) == 0);
  }
  const CoxeterSystem gp = make(kRightAngled);
  const Shadow B = shadow_of(gp, kRemarkShadow);
  CHECK(props::projection_violations(gp, B, 5) == 0);
}
