#include "topfan/fourier_motzkin.hpp"

#include <algorithm>
#include <stdexcept>

#include "topfan/errors.hpp"

namespace topfan {

namespace {

// a . x >= c, or a . x > c when strict.
struct Row {
  std::vector<Rational> a;
  Rational c;
  bool strict = false;

  bool operator==(const Row&) const = default;
};

// x_var = expr . x + offset, with expr[var] = 0.
struct Substitution {
  Eigen::Index var;
  std::vector<Rational> expr;
  Rational offset;
};

void substitute(std::vector<Rational>& a, Rational& c, const Substitution& s) {
  const Rational coef = a[s.var];
  if (coef == 0) return;
  a[s.var] = 0;
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += coef * s.expr[k];
  c -= coef * s.offset;
}

// Scales by a positive factor so the first nonzero coefficient has magnitude 1.
void normalize(Row& row) {
  for (const Rational& coef : row.a) {
    if (coef == 0) continue;
    const Rational scale = coef > 0 ? coef : Rational(-coef);
    for (Rational& x : row.a) x /= scale;
    row.c /= scale;
    return;
  }
}

bool is_constant(const Row& row) {
  return std::all_of(row.a.begin(), row.a.end(), [](const Rational& x) { return x == 0; });
}

bool constant_holds(const Row& row) { return row.strict ? Rational(0) > row.c : Rational(0) >= row.c; }

// Drops satisfied constant rows and duplicates. False when a constant row fails.
bool tidy(std::vector<Row>& rows) {
  std::vector<Row> kept;
  kept.reserve(rows.size());
  for (Row& row : rows) {
    if (is_constant(row)) {
      if (!constant_holds(row)) return false;
      continue;
    }
    normalize(row);
    if (std::find(kept.begin(), kept.end(), row) == kept.end()) kept.push_back(std::move(row));
  }
  rows = std::move(kept);
  return true;
}

Rational floor_of(const Rational& q) {
  Integer f = numerator(q) / denominator(q);  // truncates toward zero
  if (q < 0 && Rational(f) != q) f -= 1;
  return Rational(f);
}

Rational ceil_of(const Rational& q) { return -floor_of(-q); }

struct Bound {
  Rational value;
  bool strict;
};

Rational pick_value(const std::optional<Bound>& lo, const std::optional<Bound>& hi) {
  if (!lo && !hi) return Rational(0);
  if (lo && !hi) return lo->strict || !is_integer(lo->value) ? floor_of(lo->value) + 1 : lo->value;
  if (!lo && hi) return hi->strict || !is_integer(hi->value) ? ceil_of(hi->value) - 1 : hi->value;
  if (lo->value == hi->value) {
    if (lo->strict || hi->strict) throw std::logic_error("fourier_motzkin: empty interval in back substitution");
    return lo->value;
  }
  Rational candidate = lo->strict || !is_integer(lo->value) ? floor_of(lo->value) + 1 : lo->value;
  if (candidate < hi->value || (candidate == hi->value && !hi->strict)) return candidate;
  return (lo->value + hi->value) / 2;
}

void tighten_lower(std::optional<Bound>& lo, const Rational& value, bool strict) {
  if (!lo || value > lo->value || (value == lo->value && strict)) lo = Bound{value, strict};
}

void tighten_upper(std::optional<Bound>& hi, const Rational& value, bool strict) {
  if (!hi || value < hi->value || (value == hi->value && strict)) hi = Bound{value, strict};
}

}  // namespace

std::optional<RationalVector> find_feasible_point(const std::vector<LinearConstraint>& constraints,
                                                  Eigen::Index dims) {
  const auto d = static_cast<std::size_t>(dims);
  std::vector<Row> rows;
  std::vector<Row> equalities;  // a . x = c, stored as Rows with strict unused
  for (const auto& con : constraints) {
    if (con.coeffs.size() != dims) throw DimensionMismatch("find_feasible_point: constraint width");
    Row row{std::vector<Rational>(con.coeffs.data(), con.coeffs.data() + dims), con.rhs,
            con.rel == Relation::Greater};
    (con.rel == Relation::Equal ? equalities : rows).push_back(std::move(row));
  }

  std::vector<Substitution> subs;
  for (std::size_t e = 0; e < equalities.size(); ++e) {
    Row& eq = equalities[e];
    const auto pivot = std::find_if(eq.a.begin(), eq.a.end(), [](const Rational& x) { return x != 0; });
    if (pivot == eq.a.end()) {
      if (eq.c != 0) return std::nullopt;
      continue;
    }
    const auto var = static_cast<Eigen::Index>(pivot - eq.a.begin());
    const Rational p = *pivot;
    Substitution s{var, std::vector<Rational>(d), eq.c / p};
    for (std::size_t k = 0; k < d; ++k)
      if (static_cast<Eigen::Index>(k) != var) s.expr[k] = -eq.a[k] / p;
    for (std::size_t f = e + 1; f < equalities.size(); ++f) substitute(equalities[f].a, equalities[f].c, s);
    for (Row& row : rows) substitute(row.a, row.c, s);
    subs.push_back(std::move(s));
  }

  if (!tidy(rows)) return std::nullopt;
  std::vector<std::vector<Row>> stages;
  stages.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    stages.push_back(rows);
    std::vector<Row> lower, upper, next;
    for (Row& row : rows) {
      if (row.a[k] > 0) {
        lower.push_back(std::move(row));
      } else if (row.a[k] < 0) {
        upper.push_back(std::move(row));
      } else {
        next.push_back(std::move(row));
      }
    }
    for (const Row& lo : lower)
      for (const Row& up : upper) {
        const Rational wl = -up.a[k];
        const Rational wu = lo.a[k];
        Row combined{std::vector<Rational>(d), wl * lo.c + wu * up.c, lo.strict || up.strict};
        for (std::size_t l = 0; l < d; ++l) combined.a[l] = wl * lo.a[l] + wu * up.a[l];
        combined.a[k] = 0;
        next.push_back(std::move(combined));
      }
    rows = std::move(next);
    if (!tidy(rows)) return std::nullopt;
  }

  RationalVector x = RationalVector::Zero(dims);
  for (std::size_t k = d; k-- > 0;) {
    std::optional<Bound> lo, hi;
    for (const Row& row : stages[k]) {
      if (row.a[k] == 0) continue;
      Rational rest = row.c;
      for (std::size_t l = k + 1; l < d; ++l) rest -= row.a[l] * x(l);
      const Rational bound = rest / row.a[k];
      if (row.a[k] > 0) {
        tighten_lower(lo, bound, row.strict);
      } else {
        tighten_upper(hi, bound, row.strict);
      }
    }
    x(k) = pick_value(lo, hi);
  }
  for (auto s = subs.rbegin(); s != subs.rend(); ++s) {
    Rational value = s->offset;
    for (std::size_t k = 0; k < d; ++k) value += s->expr[k] * x(k);
    x(s->var) = value;
  }
  return x;
}

bool satisfies(const LinearConstraint& constraint, const RationalVector& x) {
  const Rational lhs = constraint.coeffs.dot(x);
  switch (constraint.rel) {
    case Relation::Greater: return lhs > constraint.rhs;
    case Relation::GreaterEqual: return lhs >= constraint.rhs;
    case Relation::Equal: return lhs == constraint.rhs;
  }
  return false;
}

bool cone_contains(const RationalMatrix& generators, const RationalVector& x, bool strict) {
  const Eigen::Index k = generators.rows();
  const Eigen::Index n = generators.cols();
  std::vector<LinearConstraint> cons;
  for (Eigen::Index j = 0; j < n; ++j)
    cons.push_back({generators.col(j), x(j), Relation::Equal});
  for (Eigen::Index i = 0; i < k; ++i) {
    RationalVector e = RationalVector::Zero(k);
    e(i) = 1;
    cons.push_back({e, Rational(0), strict ? Relation::Greater : Relation::GreaterEqual});
  }
  return find_feasible_point(cons, k).has_value();
}

}  // namespace topfan
