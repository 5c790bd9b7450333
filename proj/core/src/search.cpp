#include "edc/search.hpp"

#include <algorithm>
#include <limits>
#include <set>


namespace edc {

bool SearchDomain::admits(const Rational& x, bool integral) const {
  if (integral) return is_integer(x) && abs(x) <= integer_bound;
  return x.get_den() <= denominator_bound && abs(x) <= rational_bound;
}

std::vector<Rational> SearchDomain::values(bool integral) const {
  std::vector<Rational> out;
  if (integral) {
    for (int k = -integer_bound; k <= integer_bound; ++k) out.emplace_back(k);
    return out;
  }
  std::set<Rational> s;
  for (int q = 1; q <= denominator_bound; ++q) {
    const Rational lim = rational_bound * q;
    const long top = floor(lim).get_si();
    for (long k = -top; k <= top; ++k) s.insert(ratio(k, q));
  }
  out.assign(s.begin(), s.end());
  // Small magnitudes first so that simple solutions come out early.
  std::stable_sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) { return abs(a) < abs(b); });
  return out;
}

BoundedSearch::BoundedSearch(const MixedMap& f, std::vector<int> unknowns, SearchDomain domain)
    : f_(f), unknowns_(std::move(unknowns)), domain_(std::move(domain)) {
  std::sort(unknowns_.begin(), unknowns_.end());
  std::vector<int> slot(f.source().dim(), -1);
  for (int i = 0; i < static_cast<int>(unknowns_.size()); ++i) {
    slot[unknowns_[i]] = i;
    integral_.push_back(f.source().is_integral(unknowns_[i]));
  }
  zvals_ = domain_.values(true);
  qvals_ = domain_.values(false);
  var_eqs_.resize(unknowns_.size());
  for (const auto& row : f.rows()) {
    Equation e;
    for (const auto& [c, x] : row)
      if (slot[c] >= 0) e.terms.emplace_back(slot[c], x);
    for (const auto& t : e.terms) var_eqs_[t.first].push_back(static_cast<int>(eqs_.size()));
    eqs_.push_back(std::move(e));
  }
  // Connected components of the unknowns, linked through shared equations.
  std::vector<int> comp(unknowns_.size(), -1);
  for (int start = 0; start < static_cast<int>(unknowns_.size()); ++start) {
    if (comp[start] >= 0) continue;
    Component C;
    const int id = static_cast<int>(components_.size());
    std::vector<int> stack{start};
    comp[start] = id;
    std::set<int> eqs;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      C.vars.push_back(v);
      for (int e : var_eqs_[v]) {
        eqs.insert(e);
        for (const auto& [u, x] : eqs_[e].terms)
          if (comp[u] < 0) comp[u] = id, stack.push_back(u);
      }
    }
    std::sort(C.vars.begin(), C.vars.end());
    C.eqs.assign(eqs.begin(), eqs.end());
    components_.push_back(std::move(C));
  }
}

bool BoundedSearch::assign(int var, const Rational& v, std::vector<int>& trail) {
  value_[var] = v;
  trail.push_back(var);
  bool ok = true;
  for (int e : var_eqs_[var]) {
    for (const auto& [u, c] : eqs_[e].terms)
      if (u == var) partial_[e] += c * v;
    if (--open_[e] == 0 && partial_[e] != eqs_[e].rhs) ok = false;
  }
  return ok;
}

void BoundedSearch::undo(std::vector<int>& trail) {
  for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
    const int var = *it;
    const Rational v = *value_[var];
    for (int e : var_eqs_[var]) {
      for (const auto& [u, c] : eqs_[e].terms)
        if (u == var) partial_[e] -= c * v;
      ++open_[e];
    }
    value_[var].reset();
  }
  trail.clear();
}

bool BoundedSearch::descend(const Component& C, std::vector<std::vector<Rational>>& out, long limit) {
  if (++nodes_ > domain_.node_limit) {
    complete_ = false;
    return false;
  }
  std::vector<int> trail;
  for (bool progress = true; progress;) {
    progress = false;
    for (int e : C.eqs) {
      if (open_[e] != 1) continue;
      int var = -1;
      Rational c;
      for (const auto& [u, x] : eqs_[e].terms)
        if (!value_[u]) var = u, c = x;
      const Rational v = (eqs_[e].rhs - partial_[e]) / c;
      if (!domain_.admits(v, integral_[var]) || !assign(var, v, trail)) {
        undo(trail);
        return true;
      }
      progress = true;
    }
  }
  // Branch on an unknown of the equation with the fewest open unknowns, integers first.
  int var = -1, best = 0;
  for (int e : C.eqs) {
    if (open_[e] < 2 || (best && open_[e] >= best)) continue;
    best = open_[e];
    var = -1;
    for (const auto& [u, x] : eqs_[e].terms)
      if (!value_[u] && (var < 0 || (integral_[u] && !integral_[var]))) var = u;
  }
  if (var < 0)
    for (int u : C.vars)
      if (!value_[u]) {
        var = u;
        break;
      }
  if (var < 0) {
    std::vector<Rational> sol;
    for (int u : C.vars) sol.push_back(*value_[u]);
    out.push_back(std::move(sol));
    undo(trail);
    return static_cast<long>(out.size()) < limit;
  }
  for (const Rational& v : integral_[var] ? zvals_ : qvals_) {
    std::vector<int> inner;
    const bool ok = assign(var, v, inner);
    if (ok && !descend(C, out, limit)) {
      undo(inner);
      undo(trail);
      return false;
    }
    undo(inner);
  }
  undo(trail);
  return true;
}

long BoundedSearch::search(const SparseVec& fixed, const SparseVec& target, long per_component,
                           const std::function<bool(const SparseVec&)>& visit) {
  for (const auto& [c, x] : fixed)
    if (std::binary_search(unknowns_.begin(), unknowns_.end(), c))
      throw PreconditionError("bounded search: fixed part overlaps the unknowns");
  nodes_ = 0;
  complete_ = true;
  value_.assign(unknowns_.size(), std::nullopt);
  partial_.assign(eqs_.size(), Rational(0));
  open_.assign(eqs_.size(), 0);
  const SparseVec base = f_.apply(fixed);
  std::vector<Rational> t(eqs_.size(), Rational(0));
  for (const auto& [r, x] : target) t[r] += x;
  for (const auto& [r, x] : base) t[r] -= x;
  for (std::size_t e = 0; e < eqs_.size(); ++e) {
    eqs_[e].rhs = t[e];
    open_[e] = static_cast<int>(eqs_[e].terms.size());
    if (open_[e] == 0 && t[e] != 0) return 0;  // no unknown can fix this row
  }
  std::vector<std::vector<std::vector<Rational>>> sols(components_.size());
  for (std::size_t k = 0; k < components_.size(); ++k) {
    descend(components_[k], sols[k], per_component);
    if (!complete_ && sols[k].empty()) return 0;
    if (sols[k].empty()) return 0;
  }
  // Cartesian product of the component solutions.
  long found = 0;
  std::vector<std::size_t> pick(components_.size(), 0);
  while (true) {
    SparseVec x = fixed;
    for (std::size_t k = 0; k < components_.size(); ++k) {
      const auto& sol = sols[k][pick[k]];
      for (std::size_t i = 0; i < sol.size(); ++i)
        if (sol[i] != 0) axpy(x, sol[i], SparseVec{{unknowns_[components_[k].vars[i]], Rational(1)}});
    }
    ++found;
    if (!visit(x)) return found;
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == sols[k].size()) pick[k++] = 0;
    if (k == pick.size()) return found;
  }
}

long BoundedSearch::run(const SparseVec& fixed, const SparseVec& target,
                        const std::function<bool(const SparseVec&)>& visit) {
  return search(fixed, target, std::numeric_limits<long>::max(), visit);
}

std::optional<SparseVec> BoundedSearch::first(const SparseVec& fixed, const SparseVec& target) {
  std::optional<SparseVec> out;
  search(fixed, target, 1, [&](const SparseVec& x) {
    out = x;
    return false;
  });
  return out;
}

}  // namespace edc
