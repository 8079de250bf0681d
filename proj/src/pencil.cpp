#include "gms/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gms {

SymbolicMatrix::SymbolicMatrix(Field f, int n, int m)
    : field_(f), constant_(Matrix::zero(f, n, n)),
      coeffs_(size_t(m), Matrix::zero(f, n, n)) {
  if (!f.exact()) throw FieldError("symbolic matrices require an exact field");
}

SymbolicMatrix::SymbolicMatrix(Field f, const std::vector<Matrix>& coeffs)
    : field_(f), coeffs_(coeffs) {
  if (!f.exact()) throw FieldError("symbolic matrices require an exact field");
  if (coeffs.empty()) throw ShapeError("homogeneous pencil needs coefficients");
  constant_ = Matrix::zero(f, coeffs[0].rows(), coeffs[0].cols());
  for (const Matrix& c : coeffs_)
    if (!(c.field() == f) || c.rows() != constant_.rows() ||
        c.cols() != constant_.cols())
      throw ShapeError("pencil coefficient shape/field mismatch");
}

SymbolicMatrix::SymbolicMatrix(Matrix constant, std::vector<Matrix> coeffs)
    : field_(constant.field()), constant_(std::move(constant)),
      coeffs_(std::move(coeffs)) {
  if (!field_.exact()) throw FieldError("symbolic matrices require an exact field");
  for (const Matrix& c : coeffs_)
    if (!(c.field() == field_) || c.rows() != constant_.rows() ||
        c.cols() != constant_.cols())
      throw ShapeError("pencil coefficient shape/field mismatch");
}

Matrix evaluate(const SymbolicMatrix& b, const std::vector<FieldElem>& point) {
  if (int(point.size()) != b.num_vars())
    throw ShapeError("evaluation point arity mismatch");
  Matrix out = b.constant();
  for (int i = 0; i < b.num_vars(); ++i)
    if (!point[size_t(i)].is_zero())
      out = mat_add(out, scalar_mul(point[size_t(i)], b.coeffs()[size_t(i)]));
  return out;
}

std::vector<FieldElem> SamplePlan::draw(Rng& rng, const Field& f, int m) const {
  std::vector<FieldElem> point;
  point.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    std::int64_t raw = std::int64_t(rng.below(std::uint64_t(sample_set_size)));
    if (f.kind == FieldKind::rational) raw -= sample_set_size / 2;
    point.push_back(FieldElem::from_int(f, raw));
  }
  return point;
}

SamplePlan make_sample_plan(const Field& f, int degree,
                            std::int64_t field_size_hint) {
  SamplePlan plan;
  if (f.is_prime_field()) {
    plan.sample_set_size = f.p;
  } else if (f.kind == FieldKind::rational) {
    std::int64_t n = std::max<std::int64_t>(2 * std::int64_t(degree) * degree,
                                            field_size_hint);
    n = std::max<std::int64_t>(n, 2 * degree + 1);
    plan.sample_set_size = 2 * n + 1;  // integers in [-n, n]
  } else {
    throw FieldError("randomized tests run over F_p or Q");
  }
  if (plan.sample_set_size <= degree)
    throw FieldError("field too small for the requested error bound");
  return plan;
}

SymbolicMatrix with_field_for_testing(const SymbolicMatrix& b,
                                      std::int64_t field_size_hint) {
  if (!b.field().is_prime_field() || b.field().p > field_size_hint) return b;
  std::int64_t q = std::max<std::int64_t>(field_size_hint, b.n() + 1);
  while (true) {  // next prime at or above q
    bool prime = q >= 2;
    for (std::int64_t d = 2; d * d <= q; ++d)
      if (q % d == 0) {
        prime = false;
        break;
      }
    if (prime) break;
    ++q;
  }
  Field fq = Field::fp(q);
  auto lift = [&](const Matrix& m) {
    Matrix out(fq, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        out.at(i, j) = FieldElem::from_int(fq, m.at(i, j).fp_value());
    return out;
  };
  std::vector<Matrix> coeffs;
  for (const Matrix& c : b.coeffs()) coeffs.push_back(lift(c));
  return SymbolicMatrix(lift(b.constant()), std::move(coeffs));
}

SditOutcome sdit_random(const SymbolicMatrix& b_in, int trials,
                        std::int64_t field_size_hint, std::uint64_t seed) {
  SymbolicMatrix b = with_field_for_testing(b_in, field_size_hint);
  if (b.n() != b.cols()) throw ShapeError("sdit needs a square pencil");
  SamplePlan plan = make_sample_plan(b.field(), b.n(), field_size_hint);
  Rng rng(seed);
  SditOutcome out;
  out.seed = seed;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Rng trial_rng = rng.split();
    auto point = plan.draw(trial_rng, b.field(), b.num_vars());
    if (!det(evaluate(b, point)).is_zero()) {
      out.nonzero = true;
      out.witness_point = point;
      return out;
    }
  }
  out.error_bound =
      std::pow(double(b.n()) / double(plan.sample_set_size), trials);
  return out;
}

SntOutcome snt_random(const SymbolicMatrix& b_in, int trials,
                      std::int64_t field_size_hint, std::uint64_t seed) {
  if (!b_in.homogeneous())
    throw std::invalid_argument(
        "snt_random: nil is a property of a space; the pencil must be "
        "homogeneous (route affine pencils to nilindex_at_most)");
  SymbolicMatrix b = with_field_for_testing(b_in, field_size_hint);
  if (b.n() != b.cols()) throw ShapeError("snt needs a square pencil");
  SamplePlan plan = make_sample_plan(b.field(), b.n(), field_size_hint);
  Rng rng(seed);
  SntOutcome out;
  out.seed = seed;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Rng trial_rng = rng.split();
    auto point = plan.draw(trial_rng, b.field(), b.num_vars());
    out.sampled_points.push_back(point);
    Matrix value = evaluate(b, point);
    if (!mat_pow(value, b.n()).is_zero()) {
      out.not_nil = true;
      out.witness_point = point;
      return out;
    }
  }
  out.error_bound =
      std::pow(double(b.n()) / double(plan.sample_set_size), trials);
  return out;
}

NilIndexOutcome nilindex_at_most(const SymbolicMatrix& b_in, int k, int trials,
                                 std::int64_t field_size_hint,
                                 std::uint64_t seed) {
  SymbolicMatrix b = with_field_for_testing(b_in, field_size_hint);
  if (b.n() != b.cols()) throw ShapeError("nilindex_at_most needs a square pencil");
  SamplePlan plan = make_sample_plan(b.field(), k, field_size_hint);
  Rng rng(seed);
  NilIndexOutcome out;
  out.seed = seed;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Rng trial_rng = rng.split();
    auto point = plan.draw(trial_rng, b.field(), b.num_vars());
    if (!mat_pow(evaluate(b, point), k).is_zero()) {
      out.exceeded = true;
      out.witness_point = point;
      return out;
    }
  }
  out.error_bound = std::pow(double(k) / double(plan.sample_set_size), trials);
  return out;
}

namespace {

// Clow-sequence ABP layout: slot 0 is the source (layer 0) and the
// accumulator (layer n); slots 1.. index open-clow states (head h,
// current vertex u) with h <= u, 0-based.
struct ClowLayout {
  int n;
  std::vector<std::vector<int>> slot;  // slot[h][u], -1 when u < h

  explicit ClowLayout(int n) : n(n), slot(size_t(n), std::vector<int>(size_t(n), -1)) {
    int next = 1;
    for (int h = 0; h < n; ++h)
      for (int u = h; u < n; ++u) slot[size_t(h)][size_t(u)] = next++;
  }
  int size() const { return n * (n + 1) / 2 + 1; }
};

}  // namespace

namespace {

// Mutable affine-layer builder: constant part plus one matrix per variable.
struct LayerBuilder {
  Matrix constant;
  std::vector<Matrix> coeffs;

  LayerBuilder(const Field& f, int t, int m)
      : constant(f, t, t), coeffs(size_t(m), Matrix(f, t, t)) {}

  // Adds (+/-) the pencil entry (bi, bj) of b to position (row, col).
  void add(const SymbolicMatrix& b, int row, int col, int bi, int bj,
           bool negate) {
    FieldElem c = b.constant().at(bi, bj);
    if (!c.is_zero()) constant.at(row, col) += negate ? -c : c;
    for (int v = 0; v < b.num_vars(); ++v) {
      FieldElem cv = b.coeffs()[size_t(v)].at(bi, bj);
      if (!cv.is_zero()) coeffs[size_t(v)].at(row, col) += negate ? -cv : cv;
    }
  }

  void negate_row(int row) {
    for (int col = 0; col < constant.cols(); ++col) {
      constant.at(row, col) = -constant.at(row, col);
      for (auto& c : coeffs) c.at(row, col) = -c.at(row, col);
    }
  }

  SymbolicMatrix build() { return SymbolicMatrix(std::move(constant), std::move(coeffs)); }
};

}  // namespace

std::vector<SymbolicMatrix> det_abp(const SymbolicMatrix& b) {
  if (b.n() != b.cols()) throw ShapeError("det_abp needs a square pencil");
  const Field& f = b.field();
  int n = b.n();
  int m = b.num_vars();
  ClowLayout lay(n);
  int t = lay.size();

  std::vector<SymbolicMatrix> layers;
  for (int step = 1; step <= n; ++step) {
    LayerBuilder layer(f, t, m);
    bool first = step == 1;
    bool last = step == n;
    if (!first) {
      // Transitions out of open-clow states (head h, current vertex u).
      for (int h = 0; h < n; ++h)
        for (int u = h; u < n; ++u) {
          int from = lay.slot[size_t(h)][size_t(u)];
          // (a) extend the clow: u -> v, intermediate vertices stay > h.
          for (int v = h + 1; v < n; ++v)
            layer.add(b, from, lay.slot[size_t(h)][size_t(v)], u, v, false);
          // (b) close the clow (edge u -> h), open a new head h' > h;
          // the closing edge carries the per-clow sign -1.
          for (int h2 = h + 1; h2 < n; ++h2)
            layer.add(b, from, lay.slot[size_t(h2)][size_t(h2)], u, h, true);
          // (c) close and finish, valid only as the n-th step.
          if (last) layer.add(b, from, 0, u, h, true);
        }
    } else {
      // From the source: open a clow at h and take its first transition.
      for (int h = 0; h < n; ++h) {
        for (int v = h + 1; v < n; ++v)
          layer.add(b, 0, lay.slot[size_t(h)][size_t(v)], h, v, false);
        for (int h2 = h + 1; h2 < n; ++h2)
          layer.add(b, 0, lay.slot[size_t(h2)][size_t(h2)], h, h, true);
        if (last) layer.add(b, 0, 0, h, h, true);
      }
      // Global sign (-1)^n folded into the source row.
      if (n % 2 == 1) layer.negate_row(0);
    }
    layers.push_back(layer.build());
  }
  return layers;
}

SditToNilIndex sdit_to_nilindex(const SymbolicMatrix& b) {
  std::vector<SymbolicMatrix> chain = det_abp(b);
  int ell = int(chain.size());
  int t = chain[0].n();
  const Field& f = b.field();
  int m = b.num_vars();
  // C_0 = C_{ell+1} = E_{1,1}; block (i, i+1) of the gadget is C_{i-1}
  // for i in [ell+2]; the gadget is strictly block upper triangular,
  // hence always nilpotent.
  int blocks = ell + 3;
  int size = blocks * t;
  Matrix constant(f, size, size);
  std::vector<Matrix> coeffs(size_t(m), Matrix(f, size, size));
  auto place = [&](int block_row, const SymbolicMatrix& c) {
    int r0 = block_row * t, c0 = (block_row + 1) * t;
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) {
        constant.at(r0 + i, c0 + j) = c.constant().at(i, j);
        for (int v = 0; v < m; ++v)
          coeffs[size_t(v)].at(r0 + i, c0 + j) = c.coeffs()[size_t(v)].at(i, j);
      }
  };
  Matrix e11_const(f, t, t);
  e11_const.at(0, 0) = FieldElem::one(f);
  SymbolicMatrix e11(e11_const, std::vector<Matrix>(size_t(m), Matrix(f, t, t)));
  place(0, e11);
  for (int i = 0; i < ell; ++i) place(i + 1, chain[size_t(i)]);
  place(ell + 1, e11);
  return SditToNilIndex{SymbolicMatrix(std::move(constant), std::move(coeffs)),
                        ell + 2};
}

// ---------------------------------------------------------------------------
// Exact sparse multivariate polynomial matrices.

namespace {

using Monomial = std::vector<std::uint16_t>;  // exponent per variable

struct Poly {
  std::map<Monomial, FieldElem> terms;

  void add_term(const Monomial& mono, const FieldElem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
};

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t& budget) {
  Poly out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      Monomial m(ma.size());
      for (size_t i = 0; i < m.size(); ++i) m[i] = std::uint16_t(ma[i] + mb[i]);
      out.add_term(m, ca * cb);
      if (--budget < 0)
        throw CapError("pencil_power_is_zero: monomial budget exceeded");
    }
  return out;
}

}  // namespace

bool pencil_power_is_zero(const SymbolicMatrix& b, int k,
                          std::int64_t monomial_budget) {
  if (b.n() != b.cols())
    throw ShapeError("pencil_power_is_zero needs a square pencil");
  if (k <= 0) return b.n() == 0;  // B^0 = I
  int n = b.n(), m = b.num_vars();
  std::int64_t budget = monomial_budget;
  std::vector<std::vector<Poly>> base(static_cast<size_t>(n), std::vector<Poly>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Monomial unit(size_t(m), 0);
      base[size_t(i)][size_t(j)].add_term(unit, b.constant().at(i, j));
      for (int v = 0; v < m; ++v) {
        Monomial mono(size_t(m), 0);
        mono[size_t(v)] = 1;
        base[size_t(i)][size_t(j)].add_term(mono, b.coeffs()[size_t(v)].at(i, j));
      }
    }
  auto mat_poly_mul = [&](const std::vector<std::vector<Poly>>& a,
                          const std::vector<std::vector<Poly>>& c) {
    std::vector<std::vector<Poly>> out(static_cast<size_t>(n), std::vector<Poly>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (a[size_t(i)][size_t(l)].terms.empty()) continue;
        for (int j = 0; j < n; ++j) {
          if (c[size_t(l)][size_t(j)].terms.empty()) continue;
          Poly prod = poly_mul(a[size_t(i)][size_t(l)], c[size_t(l)][size_t(j)], budget);
          for (const auto& [mono, coef] : prod.terms)
            out[size_t(i)][size_t(j)].add_term(mono, coef);
        }
      }
    return out;
  };
  std::vector<std::vector<Poly>> acc = base;
  for (int step = 1; step < k; ++step) acc = mat_poly_mul(acc, base);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!acc[size_t(i)][size_t(j)].terms.empty()) return false;
  return true;
}

}  // namespace gms
