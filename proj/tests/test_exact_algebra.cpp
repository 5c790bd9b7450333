#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <random>

#include "edc/mixed.hpp"
#include "support.hpp"

using namespace edc;
using namespace edc::test;

namespace {

// gcd of all k×k minors, by brute force over row and column subsets.
Integer minor_gcd(const IntMatrix& A, int k) {
  Integer g = 0;
  std::vector<int> rs, cs;
  std::function<void(int)> pick_cols;
  std::function<void(int)> pick_rows = [&](int start) {
    if (static_cast<int>(rs.size()) == k) {
      cs.clear();
      pick_cols(0);
      return;
    }
    for (int i = start; i < A.rows(); ++i) {
      rs.push_back(i);
      pick_rows(i + 1);
      rs.pop_back();
    }
  };
  pick_cols = [&](int start) {
    if (static_cast<int>(cs.size()) == k) {
      IntMatrix M(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) M(a, b) = A(rs[a], cs[b]);
      Integer d = determinant(M);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (int j = start; j < A.cols(); ++j) {
      cs.push_back(j);
      pick_cols(j + 1);
      cs.pop_back();
    }
  };
  pick_rows(0);
  return g;
}

void check_snf(const IntMatrix& A, EliminationOrder order) {
  SmithForm f = smith_normal_form(A, order);
  CHECK(f.U * A * f.V == f.S);
  CHECK(abs(determinant(f.U)) == 1);
  CHECK(abs(determinant(f.V)) == 1);
  CHECK(f.U * f.Uinv == IntMatrix::identity(A.rows()));
  auto d = f.diagonal();
  for (int i = 0; i < f.S.rows(); ++i)
    for (int j = 0; j < f.S.cols(); ++j)
      if (i != j) CHECK(f.S(i, j) == 0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (i + 1 < d.size() && d[i] != 0) CHECK(mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t()));
  }
  // Elementary divisors from minors: d_1 ... d_k = gcd of k×k minors.
  Integer prod = 1;
  for (int k = 1; k <= f.rank; ++k) {
    prod *= d[k - 1];
    CHECK(prod == minor_gcd(A, k));
  }
  if (f.rank < std::min(A.rows(), A.cols())) CHECK(minor_gcd(A, f.rank + 1) == 0);
}

}  // namespace

TEST_CASE("smith normal form: identity, zero and a 2x2 example") {
  SmithForm id = smith_normal_form(IntMatrix::identity(3));
  CHECK(id.S == IntMatrix::identity(3));
  SmithForm z = smith_normal_form(IntMatrix(2, 3));
  CHECK(z.S.is_zero());
  CHECK(z.rank == 0);
  IntMatrix A{{2, 4}, {6, 8}};
  SmithForm f = smith_normal_form(A);
  CHECK(f.S == IntMatrix{{2, 0}, {0, 4}});
  // Frozen oracle: 2 = gcd(2,4,6,8), 2*4 = |det| = 8.
  CHECK(minor_gcd(A, 1) == 2);
  CHECK(minor_gcd(A, 2) == 8);
}

TEST_CASE("smith normal form: random small matrices against minors, both pivot orders") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int m = std::uniform_int_distribution<int>(1, 4)(rng);
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    IntMatrix A(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = std::uniform_int_distribution<int>(-6, 6)(rng);
    check_snf(A, EliminationOrder::RowMajor);
    check_snf(A, EliminationOrder::ColumnMajor);
    CHECK(smith_normal_form(A, EliminationOrder::RowMajor).S ==
          smith_normal_form(A, EliminationOrder::ColumnMajor).S);
  }
}

TEST_CASE("smith normal form: dense 48x48 matrices keep transforms small") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    const int n = 48;
    IntMatrix A(n, n);
    std::bernoulli_distribution keep(0.4);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (keep(rng)) A(i, j) = std::uniform_int_distribution<int>(-4, 4)(rng);
    for (auto order : {EliminationOrder::RowMajor, EliminationOrder::ColumnMajor}) {
      SmithForm f = smith_normal_form(A, order);
      CHECK(f.U * A * f.V == f.S);
      CHECK(f.U * f.Uinv == IntMatrix::identity(n));
      // Product of the elementary divisors is |det|.
      Integer prod = 1;
      for (const auto& d : f.diagonal()) prod *= d;
      CHECK(prod == abs(determinant(A)));
      std::size_t bits = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          bits = std::max({bits, mpz_sizeinbase(f.U(i, j).get_mpz_t(), 2), mpz_sizeinbase(f.V(i, j).get_mpz_t(), 2)});
      CHECK(bits < 1024);
    }
  }
}

TEST_CASE("solve_mixed: scalar examples and certificates") {
  MixedSpace Z1{1, 0, {}}, Q1{0, 1, {}};
  MixedMap twice(Z1, Z1, {vec({2})});
  SolveResult ok = solve_mixed(twice, vec({4}));
  REQUIRE(ok.solved);
  CHECK(ok.x == vec({2}));
  SolveResult no = solve_mixed(twice, vec({3}));
  CHECK_FALSE(no.solved);
  CHECK(check_certificate(twice, vec({3}), no.certificate));

  MixedMap incl(Z1, Q1, {vec({1})});
  SolveResult half = solve_mixed(incl, vec({Rational(1, 2)}));
  CHECK_FALSE(half.solved);
  CHECK_FALSE(half.rank_obstruction);
  CHECK(half.certificate == vec({1}));

  MixedMap zero = MixedMap::zero(Z1, Z1);
  SolveResult rank = solve_mixed(zero, vec({5}));
  CHECK_FALSE(rank.solved);
  CHECK(rank.rank_obstruction);
  CHECK(check_certificate(zero, vec({5}), rank.certificate));

  MixedSpace bad{1, 0, {}};
  CHECK_THROWS_AS(solve_mixed(twice, vec({Rational(1, 3)})), StructuralError);
  (void)bad;
}

TEST_CASE("mixed maps reject a Q to Z block") {
  MixedSpace S{0, 1, {}}, T{1, 0, {}};
  CHECK_THROWS_AS(MixedMap(S, T, {vec({1})}), StructuralError);
}

namespace {

MixedComplex two_term(const MixedSpace& a, const MixedSpace& b, const Dense& d) {
  MixedComplex C;
  C.first_degree = 0;
  C.terms = {a, b};
  C.maps = {map_from_dense(a, b, d)};
  C.validate();
  return C;
}

}  // namespace

TEST_CASE("cohomology_at: small cokernels") {
  MixedSpace Z1{1, 0, {}}, Q1{0, 1, {}}, ZQ{1, 1, {}};
  CHECK(cohomology_at(two_term(Z1, Z1, {{2}}), 1).module.str() == "Z/2");
  CHECK(cohomology_at(two_term(Z1, Q1, {{1}}), 1).module.str() == "(Q/Z)^1");
  CHECK(cohomology_at(two_term(Z1, ZQ, {{2}, {1}}), 1).module.str() == "Q^1 + Z/2");
  CHECK(cohomology_at(two_term(Z1, ZQ, {{2}, {1}}), 0).module.str() == "0");
}

TEST_CASE("cokernel of Z -> Z+Q, 1 -> (2,1): brute-force element orders") {
  // Classes of (a, q) modulo (2,1)Z, normalized so that a ∈ {0, 1}.
  auto normalize = [](long a, Rational q) {
    long t = (a - ((a % 2) + 2) % 2) / 2;
    return std::make_pair(a - 2 * t, Rational(q - t));
  };
  std::set<std::pair<long, std::string>> order_two;
  for (long a = -4; a <= 4; ++a)
    for (int den = 1; den <= 4; ++den)
      for (int num = -8; num <= 8; ++num) {
        Rational q(num, den);
        q.canonicalize();
        auto [a2, q2] = normalize(2 * a, 2 * q);
        if (a2 == 0 && q2 == 0) {
          auto [an, qn] = normalize(a, q);
          order_two.insert({an, to_string(qn)});
        }
      }
  // Identity plus one element of order two; the functional q - a/2 kills (2,1) and hits every 1/d.
  CHECK_MESSAGE(order_two.size() == 2, [&] {
    std::string m;
    for (auto& [a, q] : order_two) m += std::to_string(a) + "," + q + " ";
    return m;
  }());
  MixedSpace Z1{1, 0, {}}, ZQ{1, 1, {}};
  CHECK(cohomology_at(two_term(Z1, ZQ, {{2}, {1}}), 1).module == MixedModule::parse("Q^1 + Z/2"));
}

TEST_CASE("is_coboundary examples") {
  MixedSpace Z1{1, 0, {}};
  MixedComplex point;
  point.terms = {Z1};
  auto v0 = is_coboundary(point, 0, {});
  CHECK(v0.is_coboundary);
  CHECK(v0.witness.empty());
  auto v1 = is_coboundary(point, 0, vec({1}));
  CHECK_FALSE(v1.is_coboundary);
  CHECK(v1.generator == 0);
  CHECK(v1.coefficient == 1);
  auto C = two_term(Z1, Z1, {{2}});
  auto v2 = is_coboundary(C, 1, vec({2}));
  REQUIRE(v2.is_coboundary);
  CHECK(v2.witness == vec({1}));
}

TEST_CASE("module strings round trip and canonicalize torsion") {
  CHECK(MixedModule::parse("Z^1 + Q^2 + (Q/Z)^1 + Z/2 + Z/4").str() == "Z^1 + Q^2 + (Q/Z)^1 + Z/2 + Z/4");
  CHECK(MixedModule::parse("Z/2 + Z/3").str() == "Z/6");
  CHECK(MixedModule::parse("0").is_zero());
}

// ------------------------------------------------------------- random complexes with known cohomology

namespace {

struct RandomComplex {
  MixedComplex C;
  std::vector<MixedModule> expected;
};

// Direct sum of elementary complexes, then conjugated by random block-triangular coordinate changes.
RandomComplex random_complex(std::mt19937& rng, int ndeg = 4) {
  struct Coord {
    bool integral;
    int id;
  };
  std::vector<std::vector<Coord>> coords(ndeg);
  struct Arrow {
    int from_deg, from_id, to_id;
    Rational value;
  };
  std::vector<Arrow> arrows;
  std::vector<MixedModule> expected(ndeg);
  int next = 0;
  auto add = [&](int d, bool z) {
    coords[d].push_back({z, next});
    return next++;
  };
  int npieces = std::uniform_int_distribution<int>(1, 6)(rng);
  for (int p = 0; p < npieces; ++p) {
    int kind = std::uniform_int_distribution<int>(0, 5)(rng);
    int d = std::uniform_int_distribution<int>(0, kind <= 1 ? ndeg - 1 : ndeg - 2)(rng);
    long k = std::uniform_int_distribution<int>(1, 4)(rng);
    Rational c = random_fraction(rng, 4, 3);
    if (c == 0) c = Rational(1, 2);
    switch (kind) {
      case 0:
        add(d, true);
        expected[d] = direct_sum(expected[d], MixedModule::parse("Z^1"));
        break;
      case 1:
        add(d, false);
        expected[d] = direct_sum(expected[d], MixedModule::parse("Q^1"));
        break;
      case 2: {
        int a = add(d, true), b = add(d + 1, true);
        arrows.push_back({d, a, b, Rational(k)});
        if (k > 1) expected[d + 1] = direct_sum(expected[d + 1], MixedModule::parse("Z/" + std::to_string(k)));
        break;
      }
      case 3: {
        int a = add(d, true), b = add(d + 1, false);
        arrows.push_back({d, a, b, c});
        expected[d + 1] = direct_sum(expected[d + 1], MixedModule::parse("(Q/Z)^1"));
        break;
      }
      case 4: {
        int a = add(d, false), b = add(d + 1, false);
        arrows.push_back({d, a, b, c});
        break;
      }
      default: {
        int a = add(d, true), b = add(d + 1, true), e = add(d + 1, false);
        arrows.push_back({d, a, b, Rational(k)});
        arrows.push_back({d, a, e, c});
        std::string m = k > 1 ? "Q^1 + Z/" + std::to_string(k) : "Q^1";
        expected[d + 1] = direct_sum(expected[d + 1], MixedModule::parse(m));
      }
    }
  }
  // Positions: Z coordinates first.
  std::vector<MixedSpace> spaces(ndeg);
  std::map<int, int> pos;
  for (int d = 0; d < ndeg; ++d) {
    int i = 0;
    for (auto& c : coords[d])
      if (c.integral) pos[c.id] = i++;
    spaces[d].nZ = i;
    for (auto& c : coords[d])
      if (!c.integral) pos[c.id] = i++;
    spaces[d].nQ = i - spaces[d].nZ;
  }
  std::vector<Dense> mats(ndeg - 1);
  for (int d = 0; d + 1 < ndeg; ++d)
    mats[d].assign(spaces[d + 1].dim(), std::vector<Rational>(spaces[d].dim(), Rational(0)));
  for (auto& a : arrows) mats[a.from_deg][pos[a.to_id]][pos[a.from_id]] = a.value;

  // Elementary coordinate change E on term d: d_{d-1} <- E d_{d-1}, d_d <- d_d E^{-1}.
  for (int d = 0; d < ndeg; ++d) {
    const MixedSpace& s = spaces[d];
    if (s.dim() < 1) continue;
    for (int step = 0; step < 8; ++step) {
      int i = std::uniform_int_distribution<int>(0, s.dim() - 1)(rng);
      int j = std::uniform_int_distribution<int>(0, s.dim() - 1)(rng);
      if (i == j) continue;
      // Allowed: add multiple of coordinate i into coordinate j unless i is rational and j integral.
      if (i >= s.nZ && j < s.nZ) continue;
      Rational f = (i < s.nZ && j < s.nZ) ? random_small(rng, -2, 2) : random_fraction(rng, 3, 3);
      if (f == 0) continue;
      // New coordinate j' = x_j + f x_i: row op on the incoming map, column op on the outgoing one.
      if (d > 0) {
        auto& M = mats[d - 1];
        for (std::size_t c = 0; c < M[j].size(); ++c) M[j][c] += f * M[i][c];
      }
      if (d + 1 < ndeg) {
        auto& M = mats[d];
        for (auto& row : M) row[i] -= f * row[j];
      }
    }
  }
  RandomComplex rc;
  rc.C.first_degree = 0;
  rc.C.terms = spaces;
  for (int d = 0; d + 1 < ndeg; ++d) rc.C.maps.push_back(map_from_dense(spaces[d], spaces[d + 1], mats[d]));
  rc.C.validate();
  rc.expected = expected;
  return rc;
}

}  // namespace

TEST_CASE("random mixed complexes: canonical forms, orders, representatives and witnesses") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    RandomComplex rc = random_complex(rng);
    for (int n = 0; n < 4; ++n) {
      CohomologyData H = cohomology_at(rc.C, n, EliminationOrder::RowMajor);
      CohomologyData H2 = cohomology_at(rc.C, n, EliminationOrder::ColumnMajor);
      CHECK_MESSAGE(H.module == rc.expected[n], "trial ", trial, " degree ", n, ": ", H.module.str(),
                    " vs ", rc.expected[n].str());
      CHECK(H.module == H2.module);
      const MixedMap* out = rc.C.map_from(n);
      for (std::size_t i = 0; i < H.representatives.size(); ++i) {
        const SparseVec& z = H.representatives[i];
        if (out) CHECK(out->apply(z).empty());
        CoboundaryVerdict v = is_coboundary(rc.C, H, z);
        CHECK_FALSE(v.is_coboundary);
        CHECK(v.generator == static_cast<int>(i));
      }
      if (const MixedMap* in = rc.C.map_into(n)) {
        SparseVec x = random_element(rng, in->source());
        SparseVec b = in->apply(x);
        CoboundaryVerdict v = is_coboundary(rc.C, H, b);
        CHECK(v.is_coboundary);
        CHECK(in->apply(v.witness) == b);
      }
    }
  }
}

TEST_CASE("decode recovers coefficients of combinations of representatives") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    RandomComplex rc = random_complex(rng);
    for (int n = 0; n < 4; ++n) {
      CohomologyData H = cohomology_at(rc.C, n);
      const auto& S = H.quotient.summands();
      SparseVec z;
      std::vector<Rational> want(S.size());
      for (std::size_t i = 0; i < S.size(); ++i) {
        Rational c;
        switch (S[i].kind) {
          case SummandKind::Z: c = random_small(rng, -3, 3); break;
          case SummandKind::Q: c = random_fraction(rng, 5, 4); break;
          case SummandKind::QZ: c = frac(random_fraction(rng, 5, 4)); break;
          case SummandKind::Torsion: c = mod(random_small(rng, 0, 20).get_num(), S[i].order); break;
        }
        want[i] = c;
        axpy(z, c, S[i].generator);
      }
      if (const MixedMap* in = rc.C.map_into(n)) axpy(z, Rational(1), in->apply(random_element(rng, in->source())));
      CHECK(H.decode(z) == want);
    }
  }
}
