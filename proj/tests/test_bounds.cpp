#include <doctest.h>

#include <algorithm>
#include <random>

#include "ksetlab/bounds.hpp"
#include "ksetlab/errors.hpp"
#include "ksetlab/fuzz.hpp"
#include "ksetlab/metrics.hpp"
#include "support.hpp"

using namespace kset;

namespace {

auto find_upper(const BoundsReport& r, const std::string& method) -> const UpperBound* {
  auto it = std::find_if(r.upper.begin(), r.upper.end(), [&](const UpperBound& u) { return u.method == method; });
  return it == r.upper.end() ? nullptr : &*it;
}

auto find_lower(const BoundsReport& r, const std::string& method) -> const LowerBound* {
  auto it = std::find_if(r.lower.begin(), r.lower.end(), [&](const LowerBound& l) { return l.method == method; });
  return it == r.lower.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("covering numbers beat equal domination on the figure graph") {
  const auto m = oracle::load_model("fig1-right-sym.json");
  const auto r = bounds_report(m, 1);
  REQUIRE(find_upper(r, "edom") != nullptr);
  REQUIRE(find_upper(r, "cov") != nullptr);
  CHECK(find_upper(r, "edom")->k == 4);
  CHECK(find_upper(r, "cov")->k == 3);
  CHECK(r.best_upper == 3);
  CHECK(r.largest_impossible.value_or(0) < 3);
}

TEST_CASE("single generator bounds use its domination number") {
  const Model ring({Digraph::cycle(6)}, false);
  const auto one = bounds_report(ring, 1);
  REQUIRE(find_upper(one, "dom") != nullptr);
  CHECK(find_upper(one, "dom")->k == 3);
  REQUIRE(find_lower(one, "simple-dom") != nullptr);
  CHECK(find_lower(one, "simple-dom")->k == 2);
  CHECK(find_lower(one, "simple-dom")->applicability == Applicability::AllAlgorithms);
  CHECK(one.tight == true);

  const auto two = bounds_report(ring, 2);
  const auto sq = oracle::product(oracle::mat(Digraph::cycle(6)), oracle::mat(Digraph::cycle(6)));
  REQUIRE(find_lower(two, "multi-round") != nullptr);
  CHECK(find_lower(two, "multi-round")->k == oracle::dom(sq) - 1);
  CHECK(find_lower(two, "multi-round")->applicability == Applicability::ObliviousOnly);
  CHECK(find_upper(two, "dom")->k == oracle::dom(sq));
}

TEST_CASE("vacuous bounds are reported, not dropped") {
  const Model star({Digraph::star(4, ProcessSet{0})}, false);
  const auto r = bounds_report(star, 1);
  const auto* l = find_lower(r, "simple-dom");
  REQUIRE(l != nullptr);
  CHECK(l->k == 0);
  CHECK(l->vacuous);
  CHECK_FALSE(r.largest_impossible.has_value());
  CHECK(r.best_upper == 1);
  CHECK(find_lower(r, "general-formula") == nullptr);
}

TEST_CASE("models with several unrelated generators say no bound applies") {
  const Model m({Digraph::cycle(4), Digraph::star(4, ProcessSet{1})}, false);
  const auto r = bounds_report(m, 1);
  CHECK(r.lower.empty());
  CHECK(std::any_of(r.notes.begin(), r.notes.end(),
                    [](const std::string& s) { return s.find("no applicable") != std::string::npos; }));
}

TEST_CASE("symmetric single-orbit models get both formulas") {
  const auto m = oracle::load_model("stars-s3-n4.json");
  const auto r = bounds_report(m, 1);
  CHECK(find_lower(r, "general-formula") != nullptr);
  CHECK(find_lower(r, "symmetric-formula") != nullptr);
  CHECK(find_lower(r, "general-formula")->k == 1);
}

TEST_CASE("star family reports") {
  for (int n = 2; n <= 6; ++n) {
    for (int s = 1; s < n; ++s) {
      const auto r = star_family_report(n, s);
      CHECK(r.largest_impossible == n - s);
      CHECK(r.best_upper == n - s + 1);
      CHECK(r.tight == true);
    }
  }
  CHECK_THROWS_AS(star_family_report(4, 0), InvalidInput);
  CHECK_THROWS_AS(star_family_report(4, 4), InvalidInput);
}

TEST_CASE("formula bounds on star unions agree with the family report") {
  for (int n = 3; n <= 5; ++n) {
    for (int s = 1; s < n; ++s) {
      const auto r = bounds_report(star_family_model(n, s), 1);
      CAPTURE(n);
      CAPTURE(s);
      CHECK(r.largest_impossible == n - s);
      CHECK(r.best_upper == n - s + 1);
    }
  }
}

TEST_CASE("covering bound is reported whenever it beats equal domination") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 80; ++trial) {
    const auto m = random_model(rng);
    const auto r = bounds_report(m, 1);
    const auto& s = m.effective_generators();
    const int e = edom(s);
    bool better = false;
    for (int i = 1; i < e; ++i) better = better || m.n() - cov(s, i) < e - i;
    const auto* c = find_upper(r, "cov");
    if (better) {
      REQUIRE(c != nullptr);
      CHECK(c->k < find_upper(r, "edom")->k);
    }
  }
}

TEST_CASE("lower bounds stay below upper bounds on fuzzed models") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = random_model(rng);
    BoundsReport r;
    CHECK_NOTHROW(r = bounds_report(m, 1));
    if (r.largest_impossible && r.best_upper) CHECK(*r.largest_impossible < *r.best_upper);
  }
}

TEST_CASE("audit finds exact thresholds") {
  const auto two = audit(star_family_model(4, 2), 1);
  CHECK(two.threshold == 3);
  REQUIRE(two.runs.size() == 3);
  CHECK(two.runs[1].verdict == Verdict::Unsat);
  CHECK(two.runs[2].verdict == Verdict::Sat);
  CHECK(audit(oracle::load_model("clique-n3.json"), 1).threshold == 1);
  CHECK(audit(oracle::load_model("fig1-right-sym.json"), 1).threshold == 3);
}

TEST_CASE("bounds validate their arguments") {
  const auto m = oracle::load_model("clique-n3.json");
  CHECK_THROWS_AS(bounds_report(m, 0), InvalidInput);
  CHECK(to_string(Applicability::ObliviousOnly) == "oblivious-only");
}
