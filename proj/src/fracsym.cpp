#include "fracslice/fracsym.hpp"

#include <algorithm>
#include <cmath>

#include "fracslice/errors.hpp"
#include "fracslice/specfun.hpp"

namespace fracslice {

namespace {

constexpr PlaneComplex kI{0.0, 1.0};

bool near(const PlaneComplex& a, const PlaneComplex& b) { return std::abs(a - b) <= kExponentTol; }

bool is_zero_q(const Quaternion& q) { return q.w == 0.0 && q.x1 == 0.0 && q.x2 == 0.0 && q.x3 == 0.0; }

bool is_real_q(const Quaternion& q) { return q.x1 == 0.0 && q.x2 == 0.0 && q.x3 == 0.0; }

// base^e with the conventions 0^0 = 1 and 0^e = 0 for re(e) > 0
PlaneComplex power(double base, const PlaneComplex& e) {
  if (e == PlaneComplex(0.0, 0.0)) return 1.0;
  if (base == 0.0) {
    if (e.real() > 0.0) return 0.0;
    throw DomainError("singular monomial evaluated at its anchor");
  }
  if (base < 0.0) {
    // integer powers stay defined on the whole line (polynomials)
    const double n = std::round(e.real());
    if (e.imag() == 0.0 && e.real() == n) return std::pow(base, n);
    throw DomainError("monomial evaluated outside its frame");
  }
  return cpow(base, e);
}

PlaneComplex& exponent(MonomialTerm& t, Var v) { return v == Var::X ? t.mu : t.nu; }

void require_gt_minus_one(const PlaneComplex& e) {
  if (!(e.real() > -1.0)) throw DomainError("exponent real part must exceed -1");
}

// scalar * Gamma(e+1) / Gamma(e+1+shift), exponent e -> e + shift; pole -> exact zero
MonomialSum power_rule(const MonomialSum& s, Var v, const PlaneComplex& shift) {
  MonomialSum out(s.frame());
  for (MonomialTerm t : s.terms()) {
    PlaneComplex& e = exponent(t, v);
    require_gt_minus_one(e);
    const PlaneComplex den = e + 1.0 + shift;
    if (is_gamma_pole(den)) continue;
    t.scalar *= gamma_ratio(e + 1.0, den);
    e += shift;
    out.add(t);
  }
  return out;
}

}  // namespace

MonomialSum::MonomialSum(const Frame& frame, std::vector<MonomialTerm> terms) : frame_(frame) {
  for (const auto& t : terms) add(t);
}

MonomialSum& MonomialSum::add(const MonomialTerm& t) {
  if (t.scalar == PlaneComplex(0.0, 0.0) || is_zero_q(t.right_const)) return *this;
  terms_.push_back(t);
  return *this;
}

MonomialSum& MonomialSum::operator+=(const MonomialSum& o) {
  if (!(o.frame_ == frame_) && !o.empty()) {
    if (empty()) frame_ = o.frame_;
    else throw DomainError("adding monomial sums with different frames");
  }
  for (const auto& t : o.terms_) add(t);
  return *this;
}

MonomialSum& MonomialSum::operator-=(const MonomialSum& o) { return *this += (PlaneComplex(-1.0) * o); }

MonomialSum MonomialSum::collected() const {
  std::vector<std::vector<const MonomialTerm*>> groups;
  for (const auto& t : terms_) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return near(g.front()->mu, t.mu) && near(g.front()->nu, t.nu);
    });
    if (it == groups.end()) groups.push_back({&t});
    else it->push_back(&t);
  }
  MonomialSum out(frame_);
  for (const auto& g : groups) {
    const MonomialTerm& head = *g.front();
    const bool same_const = std::all_of(g.begin(), g.end(),
                                        [&](const MonomialTerm* t) { return t->right_const == head.right_const; });
    if (same_const) {
      PlaneComplex c = 0.0;
      for (const auto* t : g) c += t->scalar;
      out.add({c, head.mu, head.nu, head.right_const});
      continue;
    }
    Quaternion p, r;
    for (const auto* t : g) {
      p += t->scalar.real() * t->right_const;
      r += t->scalar.imag() * t->right_const;
    }
    out.add({1.0, head.mu, head.nu, p});
    out.add({kI, head.mu, head.nu, r});
  }
  return out;
}

double MonomialSum::max_coefficient() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.scalar) * norm(t.right_const));
  return m;
}

Quaternion MonomialSum::eval(const ImaginaryUnit& unit, double x, double y) const {
  const double bx = frame_.x_dir * (x - frame_.x_anchor);
  const double by = frame_.y_dir * (y - frame_.y_anchor);
  Quaternion acc;
  for (const auto& t : terms_) {
    const PlaneComplex z = t.scalar * power(bx, t.mu) * power(by, t.nu);
    acc += mul(unit.realize(z), t.right_const);
  }
  return acc;
}

std::function<Quaternion(const ImaginaryUnit&, double, double)> MonomialSum::as_function() const {
  return [s = *this](const ImaginaryUnit& u, double x, double y) { return s.eval(u, x, y); };
}

MonomialSum operator+(MonomialSum a, const MonomialSum& b) { return a += b; }
MonomialSum operator-(MonomialSum a, const MonomialSum& b) { return a -= b; }

MonomialSum operator*(const PlaneComplex& w, const MonomialSum& s) {
  MonomialSum out(s.frame());
  for (MonomialTerm t : s.terms()) {
    t.scalar = w * t.scalar;
    out.add(t);
  }
  return out;
}

MonomialSum operator*(const MonomialSum& s, const Quaternion& q) {
  MonomialSum out(s.frame());
  for (MonomialTerm t : s.terms()) {
    t.right_const = mul(t.right_const, q);
    out.add(t);
  }
  return out;
}

MonomialSum product(const MonomialSum& f, const MonomialSum& g) {
  if (!(f.frame() == g.frame()) && !f.empty() && !g.empty())
    throw DomainError("product of monomial sums with different frames");
  MonomialSum out(f.empty() ? g.frame() : f.frame());
  for (const auto& s : f.terms()) {
    if (!is_real_q(s.right_const)) throw DomainError("left factor must have real right constants");
    for (const auto& t : g.terms())
      out.add({s.scalar * t.scalar * s.right_const.w, s.mu + t.mu, s.nu + t.nu, t.right_const});
  }
  return out;
}

Quaternion sym_eval(const MonomialSum& s, const ImaginaryUnit& unit, double x, double y) {
  return s.eval(unit, x, y);
}

MonomialSum sym_rl_integral_x(const MonomialSum& s, const PlaneComplex& sigma) {
  if (!(sigma.real() > 0.0)) throw DomainError("integral order must have positive real part");
  return power_rule(s, Var::X, sigma);
}
MonomialSum sym_rl_integral_y(const MonomialSum& s, const PlaneComplex& sigma) {
  if (!(sigma.real() > 0.0)) throw DomainError("integral order must have positive real part");
  return power_rule(s, Var::Y, sigma);
}
MonomialSum sym_rl_derivative_x(const MonomialSum& s, const PlaneComplex& alpha) {
  return power_rule(s, Var::X, -alpha);
}
MonomialSum sym_rl_derivative_y(const MonomialSum& s, const PlaneComplex& beta) {
  return power_rule(s, Var::Y, -beta);
}

namespace {

MonomialSum caputo(const MonomialSum& s, Var v, const PlaneComplex& order) {
  MonomialSum varying(s.frame());
  for (const auto& t : s.terms()) {
    const PlaneComplex e = v == Var::X ? t.mu : t.nu;
    if (near(e, 0.0)) continue;
    if (!(e.real() > 0.0)) throw DomainError("Caputo derivative needs exponents with positive real part");
    varying.add(t);
  }
  return power_rule(varying, v, -order);
}

}  // namespace

MonomialSum sym_caputo_x(const MonomialSum& s, const PlaneComplex& alpha) { return caputo(s, Var::X, alpha); }
MonomialSum sym_caputo_y(const MonomialSum& s, const PlaneComplex& beta) { return caputo(s, Var::Y, beta); }

MonomialSum sym_partial(const MonomialSum& s, Var v) {
  const double dir = v == Var::X ? s.frame().x_dir : s.frame().y_dir;
  MonomialSum out(s.frame());
  for (MonomialTerm t : s.terms()) {
    PlaneComplex& e = exponent(t, v);
    if (near(e, 0.0)) continue;
    t.scalar *= e * dir;
    e -= 1.0;
    out.add(t);
  }
  return out;
}

MonomialSum constant_part(const MonomialSum& s, Var v) {
  MonomialSum out(s.frame());
  for (const auto& t : s.terms())
    if (near(v == Var::X ? t.mu : t.nu, 0.0)) out.add(t);
  return out;
}

MonomialSum substitute_x(const MonomialSum& s, double u) {
  const double base = s.frame().x_dir * (u - s.frame().x_anchor);
  MonomialSum out(s.frame());
  for (MonomialTerm t : s.terms()) {
    t.scalar *= power(base, t.mu);
    t.mu = 0.0;
    out.add(t);
  }
  return out;
}

MonomialSum substitute_y(const MonomialSum& s, double v) {
  const double base = s.frame().y_dir * (v - s.frame().y_anchor);
  MonomialSum out(s.frame());
  for (MonomialTerm t : s.terms()) {
    t.scalar *= power(base, t.nu);
    t.nu = 0.0;
    out.add(t);
  }
  return out;
}

MonomialSum reframe(const MonomialSum& s, Var v, double anchor, double dir) {
  if (dir != 1.0 && dir != -1.0) throw DomainError("frame orientation must be +1 or -1");
  Frame nf = s.frame();
  double& old_anchor = v == Var::X ? nf.x_anchor : nf.y_anchor;
  double& old_dir = v == Var::X ? nf.x_dir : nf.y_dir;
  // old base = scale * new base + shift
  const double scale = old_dir * dir;
  const double shift = old_dir * (anchor - old_anchor);
  old_anchor = anchor;
  old_dir = dir;
  MonomialSum out(nf);
  for (const auto& t : s.terms()) {
    const PlaneComplex e = v == Var::X ? t.mu : t.nu;
    const double n_real = std::round(e.real());
    if (std::abs(e - PlaneComplex(n_real, 0.0)) > kExponentTol || n_real < 0.0)
      throw DomainError("reframing needs nonnegative integer exponents");
    const int n = int(n_real);
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) binom = binom * double(n - k + 1) / double(k);
      const double coef = binom * std::pow(scale, k) * std::pow(shift, n - k);
      MonomialTerm nt = t;
      exponent(nt, v) = double(k);
      nt.scalar *= coef;
      out.add(nt);
    }
  }
  return out;
}

MonomialSum mirror(const MonomialSum& s) {
  MonomialSum out(s.frame());
  for (MonomialTerm t : s.terms()) {
    t.scalar = std::conj(t.scalar);
    t.mu = std::conj(t.mu);
    t.nu = std::conj(t.nu);
    out.add(t);
  }
  return out;
}

MonomialSum transfer(const MonomialSum& s, const ImaginaryUnit& from, const ImaginaryUnit& to) {
  if (from == to) return s;
  // real and imaginary parts of z on `from` are real, hence realizable on `to`
  const Quaternion qi = from.embed();
  MonomialSum out(s.frame());
  for (const auto& t : s.terms()) {
    const PlaneComplex c = t.scalar, cb = std::conj(t.scalar);
    const PlaneComplex mb = std::conj(t.mu), nb = std::conj(t.nu);
    const Quaternion iq = mul(qi, t.right_const);
    out.add({0.5 * c, t.mu, t.nu, t.right_const});
    out.add({0.5 * cb, mb, nb, t.right_const});
    out.add({-0.5 * kI * c, t.mu, t.nu, iq});
    out.add({0.5 * kI * cb, mb, nb, iq});
  }
  return out;
}

MonomialSum left_multiply(const Quaternion& w, const MonomialSum& s, const ImaginaryUnit& unit) {
  const ImaginaryUnit j = unit.orthogonal();
  const SplitPair wp = split(w, unit, j);
  const Quaternion qj = j.embed();
  MonomialSum out(s.frame());
  for (const auto& t : s.terms()) {
    // j * z = conj(z) * j for z in C(unit)
    out.add({wp.first * t.scalar, t.mu, t.nu, t.right_const});
    out.add({wp.second * std::conj(t.scalar), std::conj(t.mu), std::conj(t.nu), mul(qj, t.right_const)});
  }
  return out;
}

}  // namespace fracslice
