#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "plflow/plmap.hpp"

using namespace plflow;

namespace {

// standard generator A of F on [0,1]: slope 2 on [0,1/4], 1 on [1/4,1/2], 1/2 on [1/2,1]
PLMap gen_a() {
  return PLMap::from_points({Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)},
                            {Rat(0), Rat(1, 2), Rat(3, 4), Rat(1)});
}

PLMap random_dyadic_f(std::mt19937_64& rng, int grid_pow = 5) {
  // random increasing map through a random subset of the 2^-grid, dyadic values
  long long n = 1LL << grid_pow;
  std::vector<std::pair<Rat, Rat>> pts;
  pts.push_back({Rat(0), Rat(0)});
  long long x = 0, y = 0;
  while (x < n - 1 && y < n - 1) {
    x += 1 + static_cast<long long>(rng() % 3);
    y += 1 + static_cast<long long>(rng() % 3);
    if (x >= n || y >= n) break;
    pts.push_back({Rat(x, n), Rat(y, n)});
  }
  pts.push_back({Rat(1), Rat(1)});
  return dyadic_interp(pts);
}

}  // namespace

TEST_CASE("identity and canonical merge") {
  PLMap id = PLMap::identity(Rat(0), Rat(1));
  CHECK(id.is_identity());
  PLMap merged = PLMap::from_points({Rat(0), Rat(1, 2), Rat(1)}, {Rat(0), Rat(1, 2), Rat(1)});
  CHECK(merged.piece_count() == 1);
  CHECK(merged == id);
}

TEST_CASE("x0 composed with itself has the expected breakpoints") {
  PLMap a = gen_a();
  PLMap aa = a.after(a);
  std::vector<Rat> expect{Rat(0), Rat(1, 8), Rat(1, 4), Rat(1, 2), Rat(1)};
  CHECK(aa.breaks() == expect);
  CHECK(aa.slope(0) == Rat(4));
  CHECK(aa.slope(1) == Rat(2));
  CHECK(aa.slope(2) == Rat(1, 2));
  CHECK(aa.slope(3) == Rat(1, 4));
  // pointwise oracle at 64 sample dyadics
  for (int k = 0; k <= 64; ++k) {
    Rat t(k, 64);
    CHECK(aa.eval(t) == a.eval(a.eval(t)));
  }
}

TEST_CASE("inverse pairs cancel") {
  PLMap a = gen_a();
  CHECK(a.after(a.inverse()).is_identity());
  CHECK(a.inverse().after(a).is_identity());
  PLMap d = PLMap::affine(Rat(0), Rat(1, 2), Rat(0), Rat(1));
  CHECK(d.inverse() == PLMap::affine(Rat(0), Rat(1), Rat(0), Rat(1, 2)));
}

TEST_CASE("double inverse is the identity operation on 100 random maps") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    PLMap f = random_dyadic_f(rng);
    CHECK(f.inverse().inverse() == f);
    CHECK(f.dyadic());
  }
}

TEST_CASE("dyadicity is closed under compose and invert") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    PLMap f = random_dyadic_f(rng), g = random_dyadic_f(rng);
    CHECK(f.after(g).dyadic());
    CHECK(f.inverse().dyadic());
  }
}

TEST_CASE("compose rejects mismatched domains") {
  PLMap f = PLMap::identity(Rat(0), Rat(1));
  PLMap g = PLMap::identity(Rat(0), Rat(1, 2));
  CHECK_THROWS_AS(f.after(g), mismatch_error);
}

TEST_CASE("non-dyadic data is flagged") {
  PLMap f = PLMap::from_points({Rat(0), Rat(1, 3), Rat(1)}, {Rat(0), Rat(1, 2), Rat(1)});
  CHECK(!f.dyadic());
  PLMap g = PLMap::from_points({Rat(0), Rat(1, 4), Rat(1)}, {Rat(0), Rat(3, 4), Rat(1)});
  CHECK(!g.dyadic());  // slopes 3 and 1/3
}

TEST_CASE("dyadic_pl_between maps endpoints exactly with power-of-two slopes") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    auto draw = [&]() { return Rat(static_cast<long long>(rng() % 257), 64); };
    Rat a = draw(), c = draw();
    Rat b = a + Rat(1 + static_cast<long long>(rng() % 96), 64);
    Rat d = c + Rat(1 + static_cast<long long>(rng() % 96), 64);
    PLMap h = dyadic_pl_between(a, b, c, d);
    CHECK(h.domain_lo() == a);
    CHECK(h.domain_hi() == b);
    CHECK(h.image_lo() == c);
    CHECK(h.image_hi() == d);
    CHECK(h.dyadic());
  }
}

TEST_CASE("displacement tables and sup norms are exact") {
  PLMap a = gen_a();
  PWAffine tau = PWAffine::displacement_of(a);
  CHECK(tau.eval(Rat(1, 4)) == Rat(1, 4));
  CHECK(tau.eval(Rat(0)) == Rat(0));
  PWAffine zero = PWAffine::displacement_of(PLMap::identity(Rat(0), Rat(1)));
  CHECK(tau.sup_abs_diff(zero) == Rat(1, 4));
  CHECK(tau.max_value() == Rat(1, 4));
}

TEST_CASE("non-identity locus") {
  PLMap a = gen_a();
  IntervalSet s = a.non_identity_locus();
  CHECK(s == IntervalSet::open(Rat(0), Rat(1)));
  CHECK(PLMap::identity(Rat(0), Rat(1)).non_identity_locus().is_empty());
  // map fixing [1/2, 3/4] pointwise in the middle
  PLMap f = PLMap::from_points({Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(7, 8), Rat(1)},
                               {Rat(0), Rat(1, 8), Rat(1, 2), Rat(3, 4), Rat(15, 16), Rat(1)});
  IntervalSet expect = unite(IntervalSet::open(Rat(0), Rat(1, 2)),
                             IntervalSet::open(Rat(3, 4), Rat(1)));
  CHECK(f.non_identity_locus() == expect);
}
