#include "edc/mixed.hpp"

#include <sstream>

namespace edc {

// ---------------------------------------------------------------- spaces and maps

void MixedSpace::check_element(const SparseVec& v) const {
  for (const auto& [i, x] : v) {
    if (i < 0 || i >= dim()) throw StructuralError("element index outside the mixed space");
    if (i < nZ && !is_integer(x)) throw StructuralError("non-integral value on an integral coordinate");
  }
}

MixedMap::MixedMap(MixedSpace source, MixedSpace target, std::vector<SparseVec> rows)
    : source_(std::move(source)), target_(std::move(target)), rows_(std::move(rows)) {
  if (static_cast<int>(rows_.size()) != target_.dim())
    throw StructuralError("mixed map: row count does not match the target dimension");
  std::vector<std::vector<std::pair<int, Rational>>> cols(source_.dim());
  for (int r = 0; r < target_.dim(); ++r) {
    for (const auto& [c, x] : rows_[r]) {
      if (c < 0 || c >= source_.dim()) throw StructuralError("mixed map: column index out of range");
      if (r < target_.nZ) {
        if (c >= source_.nZ) throw StructuralError("mixed map: nonzero block from Q into Z");
        if (!is_integer(x)) throw StructuralError("mixed map: non-integral Z to Z entry");
      }
      cols[c].emplace_back(r, x);
    }
  }
  cols_.resize(source_.dim());
  for (int c = 0; c < source_.dim(); ++c) cols_[c] = std::move(cols[c]);
}

MixedMap MixedMap::zero(MixedSpace source, MixedSpace target) {
  std::vector<SparseVec> rows(target.dim());
  return MixedMap(std::move(source), std::move(target), std::move(rows));
}

MixedMap MixedMap::identity(MixedSpace space) {
  std::vector<SparseVec> rows(space.dim());
  for (int i = 0; i < space.dim(); ++i) rows[i] = {{i, Rational(1)}};
  return MixedMap(space, space, std::move(rows));
}

SparseVec MixedMap::apply(const SparseVec& x) const {
  std::vector<std::pair<int, Rational>> e;
  for (const auto& [c, v] : x) {
    if (c < 0 || c >= source_.dim()) throw StructuralError("mixed map: argument outside the source");
    for (const auto& [r, w] : cols_[c]) e.emplace_back(r, v * w);
  }
  return sparse_from_entries(std::move(e));
}

SparseVec MixedMap::pullback(const SparseVec& phi) const {
  std::vector<std::pair<int, Rational>> e;
  for (const auto& [r, v] : phi)
    for (const auto& [c, w] : rows_.at(r)) e.emplace_back(c, v * w);
  return sparse_from_entries(std::move(e));
}

MixedMap MixedMap::compose_after(const MixedMap& first) const {
  if (!(first.target_ == source_)) throw StructuralError("mixed map composition: dimension mismatch");
  std::vector<SparseVec> rows(target_.dim());
  std::vector<std::pair<int, Rational>> e;
  for (int r = 0; r < target_.dim(); ++r) {
    e.clear();
    for (const auto& [k, v] : rows_[r])
      for (const auto& [c, w] : first.rows_[k]) e.emplace_back(c, v * w);
    rows[r] = sparse_from_entries(e);
  }
  return MixedMap(first.source_, target_, std::move(rows));
}

bool MixedMap::is_zero() const {
  for (const auto& r : rows_)
    if (!r.empty()) return false;
  return true;
}

// ---------------------------------------------------------------- modules

std::string MixedModule::str() const {
  std::vector<std::string> parts;
  if (rankZ) parts.push_back("Z^" + std::to_string(rankZ));
  if (rankQ) parts.push_back("Q^" + std::to_string(rankQ));
  if (rankQZ) parts.push_back("(Q/Z)^" + std::to_string(rankQZ));
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
  return s;
}

MixedModule MixedModule::parse(const std::string& s) {
  MixedModule m;
  if (s == "0") return m;
  std::vector<Integer> orders;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(" + ", pos);
    std::string part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    auto power = [&](const std::string& prefix) {
      return std::stoi(part.substr(prefix.size()));
    };
    if (part.rfind("(Q/Z)^", 0) == 0)
      m.rankQZ += power("(Q/Z)^");
    else if (part.rfind("Z^", 0) == 0)
      m.rankZ += power("Z^");
    else if (part.rfind("Q^", 0) == 0)
      m.rankQ += power("Q^");
    else if (part.rfind("Z/", 0) == 0)
      orders.emplace_back(part.substr(2));
    else
      throw InputError("malformed module string '" + s + "'");
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  m.torsion = invariant_factors(orders);
  return m;
}

Integer MixedModule::torsion_order() const {
  Integer p = 1;
  for (const auto& t : torsion) p *= t;
  return p;
}

std::vector<Integer> invariant_factors(std::vector<Integer> orders) {
  const int n = static_cast<int>(orders.size());
  IntMatrix D(n, n);
  for (int i = 0; i < n; ++i) D(i, i) = orders[i];
  SmithForm f = smith_normal_form(D);
  std::vector<Integer> out;
  for (const auto& d : f.diagonal())
    if (d > 1) out.push_back(d);
  return out;
}

MixedModule direct_sum(const MixedModule& a, const MixedModule& b) {
  MixedModule m;
  m.rankZ = a.rankZ + b.rankZ;
  m.rankQ = a.rankQ + b.rankQ;
  m.rankQZ = a.rankQZ + b.rankQZ;
  std::vector<Integer> orders = a.torsion;
  orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
  m.torsion = invariant_factors(orders);
  return m;
}

// ---------------------------------------------------------------- subgroups

Subgroup Subgroup::whole(const MixedSpace& s) {
  Subgroup g{s, {}, {}};
  for (int i = 0; i < s.nZ; ++i) g.lattice.push_back({{i, Rational(1)}});
  for (int i = s.nZ; i < s.dim(); ++i) g.space.push_back({{i, Rational(1)}});
  return g;
}

namespace {

// Map from the generator coordinates (lattice: Z, space: Q) into the ambient space.
MixedMap generator_map(const Subgroup& H) {
  MixedSpace src{static_cast<int>(H.lattice.size()), static_cast<int>(H.space.size()), {}};
  std::vector<std::vector<std::pair<int, Rational>>> rows(H.ambient.dim());
  for (int k = 0; k < src.nZ; ++k)
    for (const auto& [i, x] : H.lattice[k]) rows.at(i).emplace_back(k, x);
  for (int k = 0; k < src.nQ; ++k)
    for (const auto& [i, x] : H.space[k]) rows.at(i).emplace_back(src.nZ + k, x);
  std::vector<SparseVec> r(H.ambient.dim());
  for (int i = 0; i < H.ambient.dim(); ++i) r[i] = sparse_from_entries(std::move(rows[i]));
  return MixedMap(src, H.ambient, std::move(r));
}

}  // namespace

bool Subgroup::contains(const SparseVec& x) const {
  return solve_mixed(generator_map(*this), x).solved;
}

Subgroup kernel(const MixedMap& f, EliminationOrder order) {
  std::vector<bool> integral(f.source().dim());
  for (int c = 0; c < f.source().nZ; ++c) integral[c] = true;
  MixedKernel k = mixed_column_kernel(f.rows(), f.source().dim(), integral, order);
  return Subgroup{f.source(), std::move(k.lattice), std::move(k.space)};
}

Subgroup image(const MixedMap& f) {
  Subgroup g{f.target(), {}, {}};
  for (int c = 0; c < f.source().dim(); ++c) {
    if (f.cols()[c].empty()) continue;
    (c < f.source().nZ ? g.lattice : g.space).push_back(f.cols()[c]);
  }
  return g;
}

Subgroup image(const MixedMap& f, const Subgroup& domain) {
  Subgroup g{f.target(), {}, {}};
  for (const auto& v : domain.lattice) {
    SparseVec w = f.apply(v);
    if (!w.empty()) g.lattice.push_back(std::move(w));
  }
  for (const auto& v : domain.space) {
    SparseVec w = f.apply(v);
    if (!w.empty()) g.space.push_back(std::move(w));
  }
  return g;
}

Subgroup preimage(const MixedMap& f, const Subgroup& target, const Subgroup& domain,
                  EliminationOrder order) {
  const int a = static_cast<int>(domain.lattice.size());
  const int b = static_cast<int>(domain.space.size());
  const int c = static_cast<int>(target.lattice.size());
  const int d = static_cast<int>(target.space.size());
  const int ncols = a + b + c + d;
  std::vector<std::vector<std::pair<int, Rational>>> rows(f.target().dim());
  auto put = [&](int col, const SparseVec& v, const Rational& sign) {
    for (const auto& [i, x] : v) rows.at(i).emplace_back(col, sign * x);
  };
  for (int k = 0; k < a; ++k) put(k, f.apply(domain.lattice[k]), 1);
  for (int k = 0; k < b; ++k) put(a + k, f.apply(domain.space[k]), 1);
  for (int k = 0; k < c; ++k) put(a + b + k, target.lattice[k], -1);
  for (int k = 0; k < d; ++k) put(a + b + c + k, target.space[k], -1);
  std::vector<SparseVec> r(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) r[i] = sparse_from_entries(std::move(rows[i]));
  std::vector<bool> integral(ncols, false);
  for (int k = 0; k < a; ++k) integral[k] = true;
  for (int k = 0; k < c; ++k) integral[a + b + k] = true;
  MixedKernel ker = mixed_column_kernel(r, ncols, integral, order);

  auto pull = [&](const SparseVec& v) {
    SparseVec x;
    for (const auto& [k, t] : v) {
      if (k < a)
        axpy(x, t, domain.lattice[k]);
      else if (k < a + b)
        axpy(x, t, domain.space[k - a]);
    }
    return x;
  };
  Subgroup out{domain.ambient, {}, {}};
  for (const auto& v : ker.lattice) {
    SparseVec x = pull(v);
    if (!x.empty()) out.lattice.push_back(std::move(x));
  }
  for (const auto& v : ker.space) {
    SparseVec x = pull(v);
    if (!x.empty()) out.space.push_back(std::move(x));
  }
  return out;
}

Subgroup intersection(const Subgroup& a, const Subgroup& b, EliminationOrder order) {
  return preimage(MixedMap::identity(a.ambient), b, a, order);
}

Subgroup sum(const Subgroup& a, const Subgroup& b) {
  Subgroup s = a;
  s.lattice.insert(s.lattice.end(), b.lattice.begin(), b.lattice.end());
  s.space.insert(s.space.end(), b.space.begin(), b.space.end());
  return s;
}

// ---------------------------------------------------------------- quotient

SparseVec w1_coordinates(const Reducer& R, const SparseVec& x) {
  SparseVec out;
  for (int k = 0; k < R.rank(); ++k) {
    Rational v = sparse_get(x, R.pivots()[k]);
    if (v != 0) out.emplace_back(k, v);
  }
  return out;
}

namespace {

SparseInt scaled_integral(const SparseVec& v, int nZ, const Integer& scale) {
  SparseInt out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) {
    Rational y = i < nZ ? x : Rational(x * scale);
    if (!is_integer(y)) throw PreconditionError("element lies outside the subgroup lattice");
    out.emplace_back(i, y.get_num());
  }
  return out;
}

}  // namespace

Quotient::Quotient(const Subgroup& H1, const Subgroup& H2, EliminationOrder order)
    : H1_(H1), H2_(H2) {
  const int nZ = H1.ambient.nZ;
  const int dim = H1.ambient.dim();

  for (int k = 0; k < static_cast<int>(H1.space.size()); ++k) R1_.add(H1.space[k], k);
  for (const auto& w : H2.space)
    if (!R1_.contains(w)) throw PreconditionError("quotient: divisor is not contained in the dividend");

  std::vector<SparseVec> red1, red2;
  for (const auto& g : H1.lattice) red1.push_back(R1_.reduce(g).residual);
  for (const auto& h : H2.lattice) red2.push_back(R1_.reduce(h).residual);
  scale_ = 1;
  for (const auto* list : {&red1, &red2})
    for (const auto& v : *list)
      for (const auto& [i, x] : v)
        if (i >= nZ) scale_ = lcm(scale_, x.get_den());

  std::vector<SparseInt> s1, s2;
  for (const auto& v : red1) s1.push_back(scaled_integral(v, nZ, scale_));
  for (const auto& v : red2) s2.push_back(scaled_integral(v, nZ, scale_));

  lattice1_ = column_echelon(s1, dim, true, order);
  const int rho1 = lattice1_.rank();
  const int t2 = static_cast<int>(s2.size());

  IntMatrix R(rho1, t2);
  for (int k = 0; k < t2; ++k) {
    std::vector<Integer> c;
    if (!lattice1_.coordinates(s2[k], c))
      throw PreconditionError("quotient: divisor lattice is not contained in the dividend");
    for (int i = 0; i < rho1; ++i) R(i, k) = c[i];
  }
  SmithForm sf = smith_normal_form(R, order);
  U_ = sf.U;
  V_ = sf.V;
  s_.assign(rho1, Integer(0));
  for (int i = 0; i < std::min(rho1, t2); ++i) s_[i] = sf.S(i, i);

  // Basis vectors b_j as combinations of H1's lattice generators, then e'_i = sum_j Uinv(j,i) b_j.
  std::vector<SparseVec> b(rho1);
  for (int j = 0; j < rho1; ++j)
    for (const auto& [k, t] : lattice1_.transform[lattice1_.pivot_cols[j]])
      axpy(b[j], Rational(t), H1.lattice[k]);
  auto eprime = [&](int i) {
    SparseVec e;
    for (int j = 0; j < rho1; ++j)
      if (sf.Uinv(j, i) != 0) axpy(e, Rational(sf.Uinv(j, i)), b[j]);
    return e;
  };
  rel_.assign(rho1, {});
  for (int i = 0; i < std::min(rho1, t2); ++i) {
    if (s_[i] == 0) continue;
    for (int k = 0; k < t2; ++k)
      if (V_(k, i) != 0) axpy(rel_[i], Rational(V_(k, i)), H2.lattice[k]);
  }

  // Divisible part: W1 / (W2 + (Λ2 ∩ W1)).
  ColumnEchelon ce2 = column_echelon(s2, dim, true, order);
  std::vector<SparseVec> mu;
  std::vector<SparseInt> mu_combo;
  for (int zc : ce2.zero_cols) {
    SparseVec m;
    for (const auto& [k, t] : ce2.transform[zc]) axpy(m, Rational(t), H2.lattice[k]);
    if (m.empty()) continue;
    mu.push_back(std::move(m));
    mu_combo.push_back(ce2.transform[zc]);
  }
  Reducer R2(false);
  std::vector<SparseVec> w2c;
  for (int k = 0; k < static_cast<int>(H2.space.size()); ++k) {
    w2c.push_back(w1_coordinates(R1_, H2.space[k]));
    R2.add(w2c.back(), k);
  }
  std::vector<SparseVec> mubar;
  Integer L2 = 1;
  for (const auto& m : mu) {
    mubar.push_back(R2.reduce(w1_coordinates(R1_, m)).residual);
    L2 = lcm(L2, common_denominator(mubar.back()));
  }
  std::vector<SparseInt> mus;
  for (const auto& v : mubar) mus.push_back(scaled_integral(v, 0, L2));
  ColumnEchelon cem = column_echelon(mus, std::max(1, R1_.rank()), true, order);
  const int rho = cem.rank();
  std::vector<SparseVec> lambda(rho);
  lambda_combo_.assign(rho, {});
  for (int j = 0; j < rho; ++j)
    for (const auto& [l, t] : cem.transform[cem.pivot_cols[j]]) {
      axpy(lambda[j], Rational(t), mu[l]);
      axpy(lambda_combo_[j], t, mu_combo[l]);
    }

  nW2_ = static_cast<int>(H2.space.size());
  for (int k = 0; k < nW2_; ++k) RC_.add(w2c[k], k);
  for (int j = 0; j < rho; ++j)
    if (!RC_.add(w1_coordinates(R1_, lambda[j]), nW2_ + j))
      throw StructuralError("quotient: dependent divisible lattice basis");
  for (int k = 0; k < R1_.rank(); ++k)
    if (RC_.add({{k, Rational(1)}}, nW2_ + rho + k)) complement_labels_.push_back(k);

  // Canonical summand order: Z, Q, Q/Z, torsion.
  summand_of_.assign(rho1, -1);
  for (int i = 0; i < rho1; ++i)
    if (s_[i] == 0) {
      summand_of_[i] = static_cast<int>(summands_.size());
      summands_.push_back({SummandKind::Z, 0, eprime(i)});
      ++module_.rankZ;
    }
  for (int k : complement_labels_) {
    q_summand_.push_back(static_cast<int>(summands_.size()));
    summands_.push_back({SummandKind::Q, 0, R1_.row(k)});
    ++module_.rankQ;
  }
  for (int j = 0; j < rho; ++j) {
    qz_summand_.push_back(static_cast<int>(summands_.size()));
    summands_.push_back({SummandKind::QZ, 0, lambda[j]});
    ++module_.rankQZ;
  }
  for (int i = 0; i < rho1; ++i)
    if (s_[i] > 1) {
      summand_of_[i] = static_cast<int>(summands_.size());
      summands_.push_back({SummandKind::Torsion, s_[i], eprime(i)});
      module_.torsion.push_back(s_[i]);
    }
}

Quotient::Split Quotient::split(const SparseVec& x) const {
  const int nZ = H1_.ambient.nZ;
  Split out;
  out.coeffs.assign(summands_.size(), Rational(0));
  out.witness.lattice.assign(H2_.lattice.size(), Integer(0));
  out.witness.space.assign(H2_.space.size(), Rational(0));
  out.in_H2 = true;

  SparseInt xs = scaled_integral(R1_.reduce(x).residual, nZ, scale_);
  std::vector<Integer> c;
  if (!lattice1_.coordinates(xs, c)) throw PreconditionError("element lies outside the subgroup");
  const int rho1 = lattice1_.rank();
  SparseVec r = x;
  for (int i = 0; i < rho1; ++i) {
    Integer ci = 0;
    for (int j = 0; j < rho1; ++j)
      if (U_(i, j) != 0 && c[j] != 0) ci += U_(i, j) * c[j];
    Integer coef = 0, q = 0;
    if (s_[i] == 0) {
      coef = ci;
    } else if (s_[i] == 1) {
      q = ci;
    } else {
      coef = mod(ci, s_[i]);
      q = (ci - coef) / s_[i];
    }
    if (coef != 0) {
      out.in_H2 = false;
      out.coeffs[summand_of_[i]] = Rational(coef);
      axpy(r, Rational(-coef), summands_[summand_of_[i]].generator);
    }
    if (q != 0) {
      axpy(r, Rational(-q), rel_[i]);
      for (int k = 0; k < V_.rows(); ++k)
        if (V_(k, i) != 0) out.witness.lattice[k] += q * V_(k, i);
    }
  }

  if (!R1_.reduce(r).residual.empty()) throw StructuralError("quotient: residual escaped the divisible part");
  Reducer::Reduction red = RC_.reduce(w1_coordinates(R1_, r));
  if (!red.residual.empty()) throw StructuralError("quotient: incomplete divisible basis");
  const int rho = static_cast<int>(qz_summand_.size());
  for (const auto& [label, v] : red.combo) {
    if (label < nW2_) {
      out.witness.space[label] = v;
    } else if (label < nW2_ + rho) {
      int j = label - nW2_;
      out.coeffs[qz_summand_[j]] = frac(v);
      if (!is_integer(v)) {
        out.in_H2 = false;
      } else {
        for (const auto& [k, t] : lambda_combo_[j]) out.witness.lattice[k] += v.get_num() * t;
      }
    } else {
      int k = label - nW2_ - rho;
      auto it = std::find(complement_labels_.begin(), complement_labels_.end(), k);
      out.coeffs[q_summand_[it - complement_labels_.begin()]] = v;
      out.in_H2 = false;
    }
  }
  return out;
}

std::vector<Rational> Quotient::decode(const SparseVec& x) const { return split(x).coeffs; }

std::optional<Quotient::Witness> Quotient::membership(const SparseVec& x) const {
  Split s = split(x);
  if (!s.in_H2) return std::nullopt;
  return s.witness;
}

// ---------------------------------------------------------------- complexes

const MixedSpace& MixedComplex::term(int n) const {
  if (!has_degree(n)) throw StructuralError("complex has no term in degree " + std::to_string(n));
  return terms[n - first_degree];
}

const MixedMap* MixedComplex::map_from(int n) const {
  if (!has_degree(n) || n == last_degree()) return nullptr;
  return &maps[n - first_degree];
}

const MixedMap* MixedComplex::map_into(int n) const {
  if (!has_degree(n) || n == first_degree) return nullptr;
  return &maps[n - first_degree - 1];
}

void MixedComplex::validate() const {
  if (terms.empty()) return;
  if (maps.size() + 1 != terms.size()) throw StructuralError("complex: map count mismatch");
  for (std::size_t t = 0; t < maps.size(); ++t)
    if (!(maps[t].source() == terms[t]) || !(maps[t].target() == terms[t + 1]))
      throw StructuralError("complex: map " + std::to_string(first_degree + t) + " has wrong shape");
  for (std::size_t t = 0; t + 1 < maps.size(); ++t)
    if (!maps[t + 1].compose_after(maps[t]).is_zero())
      throw StructuralError("complex: d∘d ≠ 0 at degree " + std::to_string(first_degree + t));
}

CohomologyData cohomology_at(const MixedComplex& C, int n, EliminationOrder order) {
  if (!C.has_degree(n)) throw StructuralError("cohomology: degree " + std::to_string(n) + " out of range");
  if (n == C.first_degree && !C.zero_below)
    throw StructuralError("cohomology: incoming differential into degree " + std::to_string(n) + " unknown");
  if (n == C.last_degree() && !C.zero_above)
    throw StructuralError("cohomology: outgoing differential from degree " + std::to_string(n) + " unknown");
  CohomologyData H;
  H.degree = n;
  const MixedSpace& sp = C.term(n);
  const MixedMap* out = C.map_from(n);
  const MixedMap* in = C.map_into(n);
  H.cocycles = out ? kernel(*out, order) : Subgroup::whole(sp);
  H.coboundaries = in ? image(*in) : Subgroup::zero(sp);
  H.quotient = Quotient(H.cocycles, H.coboundaries, order);
  H.module = H.quotient.module();
  // A Q/Z summand is represented by its element of order 2.
  for (const auto& s : H.quotient.summands()) {
    SparseVec r = s.generator;
    if (s.kind == SummandKind::QZ) scale(r, Rational(1, 2));
    H.representatives.push_back(std::move(r));
  }
  return H;
}

CoboundaryVerdict is_coboundary(const MixedComplex& C, const CohomologyData& H, const SparseVec& z) {
  const int n = H.degree;
  C.term(n).check_element(z);
  if (const MixedMap* out = C.map_from(n); out && !out->apply(z).empty())
    throw PreconditionError("is_coboundary: argument is not a cocycle");
  CoboundaryVerdict v;
  v.coordinates = H.quotient.decode(z);
  auto w = H.quotient.membership(z);
  if (w) {
    v.is_coboundary = true;
    const MixedMap* in = C.map_into(n);
    if (in) {
      // Generators of the coboundaries are the images of unit vectors, in column order.
      std::vector<std::pair<int, Rational>> x;
      int li = 0, si = 0;
      for (int c = 0; c < in->source().dim(); ++c) {
        if (in->cols()[c].empty()) continue;
        if (c < in->source().nZ)
          x.emplace_back(c, Rational(w->lattice[li++]));
        else
          x.emplace_back(c, w->space[si++]);
      }
      v.witness = sparse_from_entries(std::move(x));
      SparseVec check = in->apply(v.witness);
      axpy(check, Rational(-1), z);
      if (!check.empty()) throw StructuralError("is_coboundary: witness failed verification");
    } else if (!z.empty()) {
      throw StructuralError("is_coboundary: nonzero cocycle with no incoming differential");
    }
    return v;
  }
  for (std::size_t i = 0; i < v.coordinates.size(); ++i)
    if (v.coordinates[i] != 0) {
      v.generator = static_cast<int>(i);
      v.coefficient = v.coordinates[i];
      break;
    }
  return v;
}

CoboundaryVerdict is_coboundary(const MixedComplex& C, int n, const SparseVec& z) {
  return is_coboundary(C, cohomology_at(C, n), z);
}

// ---------------------------------------------------------------- solving

bool check_certificate(const MixedMap& f, const SparseVec& y, const SparseVec& phi) {
  SparseVec pf = f.pullback(phi);
  for (const auto& [c, x] : pf) {
    if (c >= f.source().nZ) return false;
    if (!is_integer(x)) return false;
  }
  Rational py = 0;
  for (const auto& [i, x] : phi) py += x * sparse_get(y, i);
  return !is_integer(py);
}

SolveResult solve_mixed(const MixedMap& f, const SparseVec& y, EliminationOrder order) {
  const MixedSpace& S = f.source();
  const MixedSpace& T = f.target();
  T.check_element(y);

  // Eliminate the Q-source columns from the Q-target rows.
  std::vector<SparseVec> qrows(f.rows().begin() + T.nZ, f.rows().end());
  std::vector<bool> allowed(S.dim(), false);
  for (int c = S.nZ; c < S.dim(); ++c) allowed[c] = true;
  PartialElimination pe = eliminate_on(std::move(qrows), allowed, true, order);

  auto functional_of = [&](int r) {
    SparseVec phi;
    for (const auto& [k, x] : pe.combos[r]) phi.emplace_back(T.nZ + k, x);
    return phi;
  };
  auto eval = [&](const SparseVec& phi) {
    Rational v = 0;
    for (const auto& [i, x] : phi) v += x * sparse_get(y, i);
    return v;
  };

  SolveResult res;
  auto rank_fail = [&](SparseVec phi, const Rational& value) {
    scale(phi, Rational(Rational(1, 2) / value));
    res.certificate = std::move(phi);
    res.rank_obstruction = true;
    if (!check_certificate(f, y, res.certificate)) throw StructuralError("solve: invalid rank certificate");
    return res;
  };

  // Integer system M x_Z = b with one target functional per row.
  std::vector<SparseInt> mrows;
  std::vector<SparseVec> functionals;
  std::vector<Rational> rhs;
  for (int t = 0; t < T.nZ; ++t) {
    SparseVec phi{{t, Rational(1)}};
    Rational b = sparse_get(y, t);
    if (f.rows()[t].empty()) {
      if (b != 0) return rank_fail(phi, b);
      continue;
    }
    mrows.push_back(to_integer(f.rows()[t]));
    functionals.push_back(std::move(phi));
    rhs.push_back(b);
  }
  for (int r = 0; r < static_cast<int>(pe.rows.size()); ++r) {
    if (pe.pivot_col[r] >= 0) continue;
    SparseVec phi = functional_of(r);
    Rational b = eval(phi);
    if (pe.rows[r].empty()) {
      if (b != 0) return rank_fail(phi, b);
      continue;
    }
    Integer d = common_denominator(pe.rows[r]);
    SparseVec row = pe.rows[r];
    scale(row, Rational(d));
    scale(phi, Rational(d));
    mrows.push_back(to_integer(row));
    functionals.push_back(std::move(phi));
    rhs.push_back(b * d);
  }

  const int m = static_cast<int>(mrows.size());
  std::vector<std::vector<std::pair<int, Integer>>> ce_cols(S.nZ);
  for (int r = 0; r < m; ++r)
    for (const auto& [c, x] : mrows[r]) ce_cols[c].emplace_back(r, x);
  std::vector<SparseInt> cols(S.nZ);
  for (int c = 0; c < S.nZ; ++c) cols[c] = std::move(ce_cols[c]);
  ColumnEchelon ce = column_echelon(cols, m, true, order);
  const int rho = ce.rank();

  // Forward substitution along the pivots.
  SparseVec resid = sparse_from_dense(rhs);
  std::vector<Rational> u(rho);
  for (int k = 0; k < rho; ++k) {
    SparseVec col = to_rational(ce.cols[ce.pivot_cols[k]]);
    u[k] = sparse_get(resid, ce.pivot_rows[k]) / sparse_get(col, ce.pivot_rows[k]);
    axpy(resid, Rational(-u[k]), col);
  }
  auto H = [&](int row, int k) { return Rational(sparse_get(ce.cols[ce.pivot_cols[k]], row)); };
  // phi restricted to the integer system rows: solve beta against the triangular pivot block.
  auto lift = [&](std::vector<Rational> target_row) {
    // Find beta on pivot rows with sum_k' beta_k' H(pr_k', k) = target_row[k] for all k.
    std::vector<Rational> beta(rho);
    for (int k = rho - 1; k >= 0; --k) {
      Rational acc = target_row[k];
      for (int kk = k + 1; kk < rho; ++kk)
        if (beta[kk] != 0) acc -= beta[kk] * H(ce.pivot_rows[kk], k);
      beta[k] = acc / H(ce.pivot_rows[k], k);
    }
    return beta;
  };
  auto to_target = [&](const std::vector<std::pair<int, Rational>>& rowcoef) {
    SparseVec phi;
    for (const auto& [r, c] : rowcoef) axpy(phi, c, functionals[r]);
    return phi;
  };

  if (!resid.empty()) {
    int r0 = resid.front().first;
    std::vector<Rational> trow(rho);
    for (int k = 0; k < rho; ++k) trow[k] = H(r0, k);
    std::vector<Rational> beta = lift(trow);
    std::vector<std::pair<int, Rational>> coef{{r0, Rational(1)}};
    for (int k = 0; k < rho; ++k)
      if (beta[k] != 0) coef.emplace_back(ce.pivot_rows[k], -beta[k]);
    SparseVec phi = to_target(coef);
    return rank_fail(phi, eval(phi));
  }
  for (int k = 0; k < rho; ++k) {
    if (is_integer(u[k])) continue;
    std::vector<Rational> trow(rho);
    trow[k] = 1;
    std::vector<Rational> beta = lift(trow);
    std::vector<std::pair<int, Rational>> coef;
    for (int kk = 0; kk < rho; ++kk)
      if (beta[kk] != 0) coef.emplace_back(ce.pivot_rows[kk], beta[kk]);
    res.certificate = to_target(coef);
    if (!check_certificate(f, y, res.certificate)) throw StructuralError("solve: invalid certificate");
    return res;
  }

  SparseVec x;
  for (int k = 0; k < rho; ++k)
    if (u[k] != 0) axpy(x, u[k], to_rational(ce.transform[ce.pivot_cols[k]]));
  // Rational part from the pivot rows of the Q-elimination, free variables set to zero.
  std::vector<std::pair<int, Rational>> qpart;
  for (int r = 0; r < static_cast<int>(pe.rows.size()); ++r) {
    if (pe.pivot_col[r] < 0) continue;
    Rational v = eval(functional_of(r));
    for (const auto& [c, a] : pe.rows[r])
      if (c < S.nZ) v -= a * sparse_get(x, c);
    if (v != 0) qpart.emplace_back(pe.pivot_col[r], v);
  }
  for (auto& e : qpart) x.push_back(e);
  x = sparse_from_entries(std::move(x));
  SparseVec check = f.apply(x);
  axpy(check, Rational(-1), y);
  if (!check.empty()) throw StructuralError("solve: solution failed verification");
  res.solved = true;
  res.x = std::move(x);
  return res;
}

}  // namespace edc
