#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "support/oracles.hpp"

using namespace bimonoid;
using bmtest::Gen;

namespace {
Term x = Term::var("x"), y = Term::var("y"), z = Term::var("z");
Term O = Term::zero(), I = Term::one();

const AnyModel& model(const std::string& name) {
  static const std::vector<AnyModel> all = builtin_models();
  for (const AnyModel& m : all)
    if (m.name == name) return m;
  throw std::invalid_argument(name);
}
}  // namespace

TEST(Equivalent, Examples) {
  EXPECT_TRUE(equivalent((x + y) * z, (x * z) + (y * z), Theory::RD));
  EXPECT_FALSE(equivalent((x + y) * z, (x * z) + (y * z), Theory::SB));
  EXPECT_FALSE(equivalent(x * (y + z), (x * y) + (x * z), Theory::RD));
  Term t = x * y;
  EXPECT_TRUE(equivalent(t + t, t, Theory::IDRD));
  EXPECT_FALSE(equivalent(t + t, t, Theory::RD));
  EXPECT_TRUE(equivalent((x + O) * I, x, Theory::SB));
  EXPECT_TRUE(equivalent(x + (y + x), (x + x) + y, Theory::AC));
  EXPECT_TRUE(equivalent(x + (y + x), (x + x) + y, Theory::ACPLUS));
  EXPECT_FALSE(equivalent(x * (y * z), (x * y) * z, Theory::ACPLUS));
  EXPECT_TRUE(equivalent(x * (y * z), (x * y) * z, Theory::AC));
  EXPECT_TRUE(equivalent(x + (y + x), x + y, Theory::ACID));
  EXPECT_FALSE(equivalent(x + (y + x), x + y, Theory::AC));
  EXPECT_EQ(parse_theory("idrd"), Theory::IDRD);
  EXPECT_THROW(parse_theory("semiring"), std::invalid_argument);
}

TEST(Representations, Examples) {
  EXPECT_EQ(to_polynomial((x + I) * y), Polynomial::of((x * y) + y));
  EXPECT_EQ(to_simple(x * I), x);
  EXPECT_EQ(to_id_polynomial((I + I) * x), IdPolynomial::of(x));
}

TEST(Representations, PolynomialDecidesRd) {
  Gen g(61, {"x", "y"});
  for (int i = 0; i < 2000; ++i) {
    Term s = g.term(g.odd_upto(11)), t = g.term(g.odd_upto(11));
    EXPECT_EQ(to_polynomial(s) == to_polynomial(t), equivalent(s, t, Theory::RD));
    Term u = bmtest::random_identity_walk(s, {"e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9"}, g, 4);
    EXPECT_EQ(to_polynomial(s), to_polynomial(u));
  }
}

// Each decider is an equivalence relation on samples.
TEST(Equivalent, EquivalenceRelation) {
  Gen g(62, {"x"});
  std::vector<Term> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(g.term(g.odd_upto(9)));
  for (Theory th : {Theory::SB, Theory::RD, Theory::IDRD}) {
    for (const Term& a : pool) {
      EXPECT_TRUE(equivalent(a, a, th));
      for (const Term& b : pool) {
        bool ab = equivalent(a, b, th);
        EXPECT_EQ(ab, equivalent(b, a, th));
        if (!ab) continue;
        for (const Term& c : pool)
          if (equivalent(b, c, th)) EXPECT_TRUE(equivalent(a, c, th));
      }
    }
  }
}

// The deciders are implied by the identities: random walks stay equivalent.
TEST(Equivalent, SoundForIdentityWalks) {
  Gen g(63);
  std::vector<std::string> E{"e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"};
  std::vector<std::string> Erd = E, Eid = E;
  Erd.push_back("e9");
  Eid.push_back("e9");
  Eid.push_back("e11");
  for (int i = 0; i < 500; ++i) {
    Term t = g.term(g.odd_upto(15));
    EXPECT_TRUE(equivalent(t, bmtest::random_identity_walk(t, E, g, 5), Theory::SB));
    EXPECT_TRUE(equivalent(t, bmtest::random_identity_walk(t, Erd, g, 5), Theory::RD));
    EXPECT_TRUE(equivalent(t, bmtest::random_identity_walk(t, Eid, g, 4), Theory::IDRD));
  }
}

// Capped search over e1-e8: whatever it connects, the decider accepts.
TEST(Equivalent, SbCompletenessAgainstCappedSearch) {
  bmtest::CappedEOracle oracle(9, {O, I, x, y});
  std::unordered_map<int, Term> first;
  std::size_t checked = 0;
  for (const Term& t : oracle.terms()) {
    if (t.size() > 7) continue;
    auto [it, fresh] = first.emplace(oracle.component(t), t);
    if (!fresh) {
      ++checked;
      EXPECT_TRUE(equivalent(it->second, t, Theory::SB)) << render(it->second) << " ~ " << render(t);
    }
  }
  EXPECT_GT(checked, 1000u);
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(model("plusmin").eval((I + I) * x, {{"x", "3"}}), "3");
  EXPECT_EQ(model("plusmin").eval(I + I, {}), "inf");
  EXPECT_EQ(model("plusmin").eval(x * y, {{"x", "3"}, {"y", "5"}}), "3");
  EXPECT_EQ(model("plusmin").eval(x + y, {{"x", "3"}, {"y", "5"}}), "8");
  EXPECT_EQ(model("plusplus").eval(O + x, {{"x", "4"}}), "4");
  EXPECT_EQ(model("plusplus").eval(x * y, {{"x", "4"}, {"y", "5"}}), "9");
  EXPECT_EQ(model("plusplus").eval(O * x, {{"x", "4"}}), "zero");
  EXPECT_EQ(model("plusplus").eval(I, {}), "0");
  EXPECT_EQ(model("words").eval(x * y, {{"x", "ab"}, {"y", "c"}}), "abc");
  EXPECT_EQ(model("words").eval(x + y, {{"x", "abc"}, {"y", "abd"}}), "ab");
  EXPECT_EQ(model("words").eval(O + x, {{"x", "ab"}}), "ab");
  EXPECT_EQ(model("words").eval(I, {}), "eps");
  EXPECT_EQ(model("bool").eval(x + y, {{"x", "0"}, {"y", "1"}}), "1");
  for (int n = 1; n <= 10; ++n) EXPECT_EQ(model("bool").eval(bmtest::t_n(n), {}), "1");
  EXPECT_THROW(model("bool").eval(x, {}), UnboundVariable);
  EXPECT_THROW(model("bool").eval(x, {{"x", "maybe"}}), std::invalid_argument);
}

TEST(Models, Flags) {
  EXPECT_TRUE(model("bool").right_distributive);
  EXPECT_TRUE(model("bool").idempotent);
  EXPECT_FALSE(model("plusmin").right_distributive);
  EXPECT_FALSE(model("plusmin").idempotent);
  EXPECT_FALSE(model("plusplus").right_distributive);
  EXPECT_FALSE(model("words").right_distributive);
  // min does not distribute over + in either order.
  auto pm = plusmin_model();
  EXPECT_NE(pm.mul(pm.add(1, 1), 1), pm.add(pm.mul(1, 1), pm.mul(1, 1)));
  // Words are left-distributive only.
  auto w = words_model();
  Word a = std::string("a"), b = std::string("b"), c = std::string("c");
  EXPECT_EQ(w.mul(a, w.add(b, c)), w.add(w.mul(a, b), w.mul(a, c)));
  EXPECT_NE(w.mul(w.add(b, c), a), w.add(w.mul(b, a), w.mul(c, a)));
}

TEST(Models, RegistrationRejectsFalseFlags) {
  auto m = plusmin_model();
  m.right_distributive = true;
  EXPECT_THROW(register_model(m), ModelRejected);
  auto w = words_model();
  w.idempotent = true;
  EXPECT_NO_THROW(register_model(w));  // gcp(u, u) = u
  auto p = plusplus_model();
  p.idempotent = true;
  EXPECT_THROW(register_model(p), ModelRejected);
  auto f = bmtest::maps3_model();
  EXPECT_NO_THROW(register_model(f));
  f.idempotent = true;
  EXPECT_THROW(register_model(f), ModelRejected);
  auto broken = bool_model();
  broken.mul = [](bool a, bool) { return a; };
  EXPECT_THROW(register_model(broken), ModelRejected);
}

TEST(Evaluate, HomomorphismRespectsTheories) {
  Gen g(64);
  std::vector<std::string> E{"e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"};
  std::vector<std::string> Erd = E;
  Erd.push_back("e9");
  auto b = bool_model();
  auto pm = plusmin_model();
  auto pp = plusplus_model();
  auto w = words_model();
  auto f = register_model(bmtest::maps3_model());
  for (int i = 0; i < 1000; ++i) {
    Term t = g.term(g.odd_upto(15));
    Term u = bmtest::random_identity_walk(t, E, g, 4);
    Term v = bmtest::random_identity_walk(t, Erd, g, 4);
    auto check = [&](const auto& m, const Term& a, const Term& c) {
      auto env = bmtest::random_assignment(m, g.rng);
      EXPECT_EQ(evaluate(a, m, env), evaluate(c, m, env)) << m.name << ": " << render(a) << " vs " << render(c);
    };
    check(b, t, u);
    check(pm, t, u);
    check(pp, t, u);
    check(w, t, u);
    check(f, t, u);
    check(b, t, v);
    check(f, t, v);
  }
}

// Growth trend of the SB decider: slope of log(time) against log(size).
TEST(Equivalent, SbScalesNearLinearly) {
  Gen g(65);
  std::vector<double> lx, ly;
  for (std::size_t n : {1001u, 3001u, 10001u, 30001u, 100001u}) {
    Term s = g.term(n), t = g.ac_shuffle(s);
    int reps = static_cast<int>(std::max<std::size_t>(1, 200000 / n));
    double best = 1e300;
    for (int round = 0; round < 3; ++round) {
      auto t0 = std::chrono::steady_clock::now();
      for (int r = 0; r < reps; ++r) EXPECT_TRUE(equivalent(s, t, Theory::SB));
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      best = std::min(best, dt.count() / reps);
    }
    lx.push_back(std::log(static_cast<double>(s.size())));
    ly.push_back(std::log(best));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i] / lx.size(), my += ly[i] / ly.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) num += (lx[i] - mx) * (ly[i] - my), den += (lx[i] - mx) * (lx[i] - mx);
  double slope = num / den;
  RecordProperty("slope", std::to_string(slope));
  EXPECT_LE(slope, std::log2(2.5)) << "slope " << slope;
}
