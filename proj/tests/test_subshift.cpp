#include <catch2/catch_amalgamated.hpp>
#include <random>
#include <set>

#include "plflow/clopen.hpp"
#include "plflow/induced.hpp"
#include "plflow/subshift.hpp"
#include "plflow/sympoint.hpp"

using namespace plflow;

namespace {

SubshiftPtr full01() { return Subshift::full_shift("01"); }
SubshiftPtr fibonacci() { return Subshift::substitution("ab", {{'a', "ab"}, {'b', "a"}}); }
SubshiftPtr golden_mean() { return Subshift::sft_forbidden("01", {"11"}); }

// brute-force language oracle: iterate the substitution far beyond need
std::vector<std::string> fib_factors_oracle(size_t n) {
  std::string w = "a";
  for (int i = 0; i < 20; ++i) {
    std::string nw;
    for (char c : w) nw += (c == 'a') ? "ab" : "a";
    w = nw;
  }
  std::set<std::string> f;
  for (size_t i = 0; i + n <= w.size(); ++i) f.insert(w.substr(i, n));
  return {f.begin(), f.end()};
}

}  // namespace

TEST_CASE("allowed_words on the stock systems") {
  auto full = full01();
  CHECK(full->words(2) == std::vector<std::string>{"00", "01", "10", "11"});

  auto fib = fibonacci();
  CHECK(fib->words(2) == std::vector<std::string>{"aa", "ab", "ba"});
  for (size_t n = 1; n <= 10; ++n) CHECK(fib->words(n) == fib_factors_oracle(n));

  auto gm = golden_mean();
  CHECK(gm->words(3) == std::vector<std::string>{"000", "001", "010", "100", "101"});
}

TEST_CASE("factoriality up to length 8") {
  for (const auto& s : {full01(), fibonacci(), golden_mean(),
                        Subshift::periodic("01", "01")}) {
    for (size_t n = 2; n <= 8; ++n) {
      for (const auto& w : s->words(n)) {
        CHECK(s->allowed(w.substr(0, n - 1)));
        CHECK(s->allowed(w.substr(1)));
      }
    }
  }
}

TEST_CASE("membership never enumerates: long windows") {
  auto gm = golden_mean();
  std::string w;
  for (int i = 0; i < 200; ++i) w += (i % 2) ? "0" : "1";
  CHECK(gm->allowed(w));
  CHECK(!gm->allowed(w + "11"));
  auto fib = fibonacci();
  std::string v = fib->words(40).front();
  CHECK(fib->allowed(v));
}

TEST_CASE("primitivity is checked") {
  CHECK_THROWS_AS(Subshift::substitution("ab", {{'a', "aa"}, {'b', "bb"}}), validation_error);
  CHECK_THROWS_AS(Subshift::substitution("ab", {{'a', "a"}, {'b', "b"}}), validation_error);
}

TEST_CASE("empty SFT rejected, periodic roots reduced") {
  CHECK_THROWS_AS(Subshift::sft_forbidden("01", {"0", "1"}), validation_error);
  auto p = Subshift::periodic("01", "0101");
  CHECK(p->periodic_word() == "01");
  CHECK(p->words(3) == std::vector<std::string>{"010", "101"});
}

TEST_CASE("clopen boolean algebra examples") {
  auto fib = fibonacci();
  ClopenSet a0 = ClopenSet::cylinder(fib, 0, 'a');
  ClopenSet b1 = ClopenSet::cylinder(fib, 1, 'b');
  ClopenSet ab = intersect(a0, b1);
  CHECK(ab == ClopenSet::from_words(fib, 0, {"ab"}));

  // C u complement(C) = X
  CHECK(unite(a0, a0.complement()) == ClopenSet::whole(fib));
  CHECK(intersect(a0, a0.complement()).is_empty());

  auto gm = golden_mean();
  ClopenSet one0 = ClopenSet::cylinder(gm, 0, '1');
  ClopenSet one1 = ClopenSet::cylinder(gm, 1, '1');
  CHECK(intersect(one0, one1).is_empty());

  auto full = full01();
  CHECK_THROWS_AS(intersect(ClopenSet::cylinder(full, 0, '0'), a0), mismatch_error);
}

TEST_CASE("canonical form: re-expression over larger windows is stable") {
  auto fib = fibonacci();
  ClopenSet b0 = ClopenSet::cylinder(fib, 0, 'b');
  auto words = b0.expanded_words(-2, 2);
  ClopenSet re = ClopenSet::from_words(fib, -2, words);
  CHECK(re == b0);
  ClopenSet all_words = ClopenSet::from_words(fib, 0, fib->words(3));
  CHECK(all_words == ClopenSet::whole(fib));
}

TEST_CASE("shift_set translates windows and inverts") {
  auto fib = fibonacci();
  ClopenSet b0 = ClopenSet::cylinder(fib, 0, 'b');
  CHECK(b0.shifted(0) == b0);
  CHECK(b0.shifted(3).shifted(-3) == b0);
  ClopenSet bm1 = ClopenSet::cylinder(fib, -1, 'b');
  CHECK(b0.shifted(1) == bm1);
}

TEST_CASE("shift_set is a boolean algebra automorphism on random pairs") {
  auto gm = golden_mean();
  std::mt19937_64 rng(42);
  auto random_clopen = [&]() {
    long lo = static_cast<long>(rng() % 5) - 2;
    size_t len = 1 + rng() % 3;
    auto lang = gm->words(len);
    std::vector<std::string> pick;
    for (const auto& w : lang)
      if (rng() % 2) pick.push_back(w);
    return ClopenSet::from_words(gm, lo, pick);
  };
  for (int i = 0; i < 50; ++i) {
    ClopenSet c = random_clopen(), d = random_clopen();
    long n = static_cast<long>(rng() % 7) - 3;
    CHECK(unite(c, d).shifted(n) == unite(c.shifted(n), d.shifted(n)));
    CHECK(intersect(c, d).shifted(n) == intersect(c.shifted(n), d.shifted(n)));
    CHECK(c.complement().shifted(n) == c.shifted(n).complement());
  }
}

TEST_CASE("first return times match the spec examples") {
  auto full = full01();
  CHECK(first_return_time(ClopenSet::whole(full)) == 1);
  auto fib = fibonacci();
  CHECK(first_return_time(ClopenSet::cylinder(fib, 0, 'b')) == 2);
  auto gm = golden_mean();
  CHECK(first_return_time(ClopenSet::cylinder(gm, 0, '1')) == 2);
}

TEST_CASE("first return time against brute force over the language") {
  auto check_brute = [](const SubshiftPtr& s, const ClopenSet& c, long bound) {
    for (long n = 1; n <= bound; ++n)
      if (!intersect(c, c.shifted(-n)).is_empty()) return n;
    return -1L;
  };
  std::mt19937_64 rng(7);
  for (const auto& s : {fibonacci(), golden_mean()}) {
    for (int trial = 0; trial < 25; ++trial) {
      size_t len = 1 + rng() % 3;
      auto lang = s->words(len);
      std::vector<std::string> pick;
      for (const auto& w : lang)
        if (rng() % 2) pick.push_back(w);
      if (pick.empty()) continue;
      ClopenSet c = ClopenSet::from_words(s, 0, pick);
      long brute = check_brute(s, c, 32);
      if (brute < 0) continue;
      CHECK(first_return_time(c) == brute);
    }
  }
}

TEST_CASE("return partition: cells, times, and the unbounded witness") {
  auto full = full01();
  auto cells = return_partition(ClopenSet::whole(full));
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].time == 1);
  CHECK(cells[0].cell == ClopenSet::whole(full));

  auto fib = fibonacci();
  ClopenSet a0 = ClopenSet::cylinder(fib, 0, 'a');
  auto rp = return_partition(a0);
  std::set<long> times;
  ClopenSet acc = ClopenSet::none(fib);
  for (const auto& rc : rp) {
    times.insert(rc.time);
    CHECK(intersect(acc, rc.cell).is_empty());
    acc = unite(acc, rc.cell);
  }
  CHECK(acc == a0);
  CHECK(times == std::set<long>{1, 2});

  try {
    return_partition(ClopenSet::cylinder(full, 0, '1'), ReturnMode::FirstEntry, 8);
    FAIL("expected unbounded_return_error");
  } catch (const unbounded_return_error& e) {
    CHECK(e.witness.find('1') == std::string::npos);  // witness avoids [1]
    CHECK(!e.witness.empty());
  }
}

TEST_CASE("return partition cells: recorded time achieved and minimal, brute force") {
  auto fib = fibonacci();
  ClopenSet a0 = ClopenSet::cylinder(fib, 0, 'a');
  for (const auto& rc : return_partition(a0)) {
    long whi = std::max<long>(rc.cell.window_empty() ? 0 : rc.cell.hi(), rc.time);
    long wlo = std::min<long>(rc.cell.window_empty() ? 0 : rc.cell.lo(), 0);
    for (const auto& u : rc.cell.expanded_words(wlo, whi)) {
      CHECK(u[static_cast<size_t>(-wlo)] == 'a');
      CHECK(u[static_cast<size_t>(rc.time - wlo)] == 'a');
      for (long i = 1; i < rc.time; ++i)
        CHECK(u[static_cast<size_t>(i - wlo)] != 'a');
    }
  }
}

TEST_CASE("generating partition") {
  auto full = full01();
  auto gp = generating_partition(full);
  REQUIRE(gp.size() == 2);
  CHECK(gp[0] == ClopenSet::cylinder(full, 0, '0'));
  CHECK(gp[1] == ClopenSet::cylinder(full, 0, '1'));
  auto fib = fibonacci();
  CHECK(generating_partition(fib).size() == 2);
  auto p = Subshift::periodic("01", "01");
  CHECK(generating_partition(p).size() == 2);
}

TEST_CASE("sft approximations are nested and match the spec examples") {
  auto fib = fibonacci();
  auto x2 = sft_approximation(fib, 2);
  auto gm_ab = Subshift::sft_forbidden("ab", {"bb"});
  CHECK(language_equal(x2, gm_ab, 8));

  auto full = full01();
  CHECK(language_equal(sft_approximation(full, 3), full, 8));

  auto gm = golden_mean();
  CHECK(language_equal(sft_approximation(gm, 2), gm, 8));

  std::vector<SubshiftPtr> tower;
  for (size_t n = 1; n <= 5; ++n) tower.push_back(sft_approximation(fib, n));
  for (size_t i = 0; i + 1 < tower.size(); ++i)
    for (size_t m = 1; m <= 8; ++m)
      CHECK(language_subset(tower[i + 1], tower[i], m));
}

TEST_CASE("points: oracle access and membership") {
  auto fib = fibonacci();
  SymbolicPoint x = SymbolicPoint::substitution_fixed(fib, 'a', 'a');
  CHECK(x.at(0) == 'a');
  CHECK(x.window(0, 4) == "abaab");
  CHECK(!ClopenSet::cylinder(fib, 0, 'b').contains(x));
  CHECK(ClopenSet::cylinder(fib, 1, 'b').contains(x));
  CHECK(ClopenSet::whole(fib).contains(x));

  auto gm = golden_mean();
  SymbolicPoint y = SymbolicPoint::eventually_periodic(gm, "0", "101", "01");
  CHECK(y.window(-3, 5) == "000101010");
  CHECK(ClopenSet::cylinder(gm, 0, '1').contains(y));
  SymbolicPoint z = y.shifted(1);
  CHECK(z.at(0) == '0');
  CHECK(points_equal(y, y.shifted(0)));
  CHECK(!points_equal(y, z));

  CHECK_THROWS_AS(SymbolicPoint::eventually_periodic(gm, "1", "", "0"), validation_error);
}

TEST_CASE("induced system: trivial transversal is the system itself") {
  auto gm = golden_mean();
  auto ind = induced_system(ClopenSet::whole(gm));
  REQUIRE(ind->return_words().size() == 2);
  CHECK(ind->return_words()[0].word.size() == 1);
  CHECK(ind->return_words()[1].word.size() == 1);
  for (size_t n = 1; n <= 6; ++n)
    CHECK(ind->words(n).size() == gm->words(n).size());
}

TEST_CASE("induced system of Fibonacci at [a]: two return words") {
  auto fib = fibonacci();
  auto ind = induced_system(ClopenSet::cylinder(fib, 0, 'a'));
  REQUIRE(ind->return_words().size() == 2);
  CHECK(ind->return_words()[0].word == "a");
  CHECK(ind->return_words()[1].word == "ab");
  CHECK(ind->words(1).size() == 2);
}

TEST_CASE("induced coding conjugates the first return map on periodic points") {
  auto gm = golden_mean();
  ClopenSet c = ClopenSet::cylinder(gm, 0, '1');
  auto ind = induced_system(c);
  for (const std::string& per : {std::string("10"), std::string("100"),
                                 std::string("10100100"), std::string("1000")}) {
    SymbolicPoint x = SymbolicPoint::periodic(gm, per);
    if (!c.contains(x)) continue;
    SymbolicPoint coded = ind->encode(x);
    SymbolicPoint ret = first_return_map(c, x);
    SymbolicPoint coded_ret = ind->encode(ret);
    CHECK(points_equal(coded.shifted(1), coded_ret));
  }
}

TEST_CASE("unbounded return for the induced construction") {
  auto full = full01();
  CHECK_THROWS_AS(induced_system(ClopenSet::cylinder(full, 0, '1'), 8), unbounded_return_error);
}
