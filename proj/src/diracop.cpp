#include "cliff/diracop.hpp"

#include <cmath>
#include <numbers>

#include "cliff/errors.hpp"
#include "cliff/format.hpp"
#include "cliff/kernels/spinor_kernels.hpp"
#include "cliff/trace.hpp"

namespace cliff {

std::string_view to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::dirac_mass: return "dirac_mass";
    case OperatorKind::dirac_A: return "dirac_A";
    case OperatorKind::u1_covariant: return "u1_covariant";
  }
  return "?";
}

OperatorKind parse_operator_kind(std::string_view text) {
  if (text == "dirac_mass" || text == "dirac-mass") return OperatorKind::dirac_mass;
  if (text == "dirac_A" || text == "dirac-A") return OperatorKind::dirac_A;
  if (text == "u1_covariant" || text == "u1-covariant" || text == "u1") {
    return OperatorKind::u1_covariant;
  }
  throw InvalidInput("unknown operator kind '" + std::string(text) + "'");
}

void FlatOperator::validate() const {
  if (!std::isfinite(m) || m < 0.0) throw InvalidInput("mass must be finite and >= 0");
  if (kind == OperatorKind::dirac_mass && !(m > 0.0)) {
    throw MassRequired("dirac_mass operator needs m > 0");
  }
  if (kind != OperatorKind::dirac_mass && !A) {
    throw InvalidInput(std::string(to_string(kind)) + " operator needs a one-form A");
  }
}

Lattice Lattice::periodic(int extent) {
  Lattice lat{2.0 * std::numbers::pi / extent, extent};
  lat.validate();
  return lat;
}

std::size_t Lattice::sites() const {
  const auto n = static_cast<std::size_t>(extent);
  return n * n * n * n;
}

void Lattice::validate() const {
  if (extent < 8) throw InvalidInput("lattice extent must be at least 8");
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput("lattice spacing must be positive");
}

SpinorField::SpinorField(int n) : extent(n) {
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t sites = nn * nn * nn * nn;
  for (int c = 0; c < 4; ++c) {
    re[c].assign(sites, 0.0);
    im[c].assign(sites, 0.0);
  }
}

namespace {

RealVector4 raise_eta(const Signature& eta, const RealVector4& lower) {
  RealVector4 up;
  for (int j = 0; j < 4; ++j) up[j] = eta[j] * lower[j];
  return up;
}

// Operator written as i C^j d_j + D.
struct OperatorParts {
  std::array<ComplexMatrix4, 4> c;
  ComplexMatrix4 d = ComplexMatrix4::Zero();
};

OperatorParts operator_parts(const FlatOperator& op, const GammaRep& rep) {
  op.validate();
  const Signature& eta = rep.signature();
  OperatorParts parts;
  const ComplexMatrix4 id = ComplexMatrix4::Identity();
  for (int j = 0; j < 4; ++j) parts.c[j] = double(eta[j]) * rep[j];  // gamma^j
  switch (op.kind) {
    case OperatorKind::dirac_mass:
      parts.d = -op.m * id;
      break;
    case OperatorKind::dirac_A: {
      const RealVector4 a_up = raise_eta(eta, op.A->components);
      for (int j = 0; j < 4; ++j) parts.c[j] -= a_up[j] * id;
      break;
    }
    case OperatorKind::u1_covariant:
      parts.d = -slash(rep, raise_eta(eta, op.A->components));
      break;
  }
  return parts;
}

kernels::PlanarMatrix4 planar(const ComplexMatrix4& m) {
  kernels::PlanarMatrix4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      out.re[4 * r + c] = m(r, c).real();
      out.im[4 * r + c] = m(r, c).imag();
    }
  return out;
}

kernels::SpinorRowConst const_row(const SpinorField& f, std::size_t offset) {
  kernels::SpinorRowConst r;
  for (int c = 0; c < 4; ++c) {
    r.re[c] = f.re[c].data() + offset;
    r.im[c] = f.im[c].data() + offset;
  }
  return r;
}

kernels::SpinorRow mut_row(SpinorField& f, std::size_t offset) {
  kernels::SpinorRow r;
  for (int c = 0; c < 4; ++c) {
    r.re[c] = f.re[c].data() + offset;
    r.im[c] = f.im[c].data() + offset;
  }
  return r;
}

struct RowScratch {
  std::array<std::vector<double>, 4> re, im;
  explicit RowScratch(int n) {
    for (int c = 0; c < 4; ++c) {
      re[c].assign(static_cast<std::size_t>(n), 0.0);
      im[c].assign(static_cast<std::size_t>(n), 0.0);
    }
  }
  kernels::SpinorRowConst view() const {
    kernels::SpinorRowConst r;
    for (int c = 0; c < 4; ++c) {
      r.re[c] = re[c].data();
      r.im[c] = im[c].data();
    }
    return r;
  }
  kernels::SpinorRow mut() {
    kernels::SpinorRow r;
    for (int c = 0; c < 4; ++c) {
      r.re[c] = re[c].data();
      r.im[c] = im[c].data();
    }
    return r;
  }
};

double phase_at(const RealVector4& p, double h, int x0, int x1, int x2, int x3) {
  return p[0] * (h * x0) + p[1] * (h * x1) + p[2] * (h * x2) + p[3] * (h * x3);
}

}  // namespace

ComplexMatrix4 symbol_matrix(const FlatOperator& op, const RealVector4& p,
                             const GammaRep& rep) {
  const OperatorParts parts = operator_parts(op, rep);
  ComplexMatrix4 s = parts.d;
  for (int j = 0; j < 4; ++j) s += p[j] * parts.c[j];
  return s;
}

void check_commensurate(const PlaneWave& w, const Lattice& lat) {
  lat.validate();
  for (int j = 0; j < 4; ++j) {
    const double modes = w.p[j] * lat.length() / (2.0 * std::numbers::pi);
    if (std::abs(modes - std::round(modes)) > 1e-9) {
      throw IncommensurateMomentum("momentum component " + std::to_string(j + 1) + " = " +
                                   format_double(w.p[j]) +
                                   " is not periodic on a lattice of length " +
                                   format_double(lat.length()));
    }
  }
}

SpinorField sample_plane_wave(const PlaneWave& w, const Lattice& lat) {
  check_commensurate(w, lat);
  if (w.u.isZero(0.0)) throw InvalidInput("plane-wave amplitude must be non-zero");
  const int n = lat.extent;
  SpinorField f(n);
  std::size_t s = 0;
  for (int x3 = 0; x3 < n; ++x3)
    for (int x2 = 0; x2 < n; ++x2)
      for (int x1 = 0; x1 < n; ++x1)
        for (int x0 = 0; x0 < n; ++x0, ++s) {
          const complex e = std::polar(1.0, -phase_at(w.p, lat.h, x0, x1, x2, x3));
          for (int c = 0; c < 4; ++c) {
            const complex v = w.u[c] * e;
            f.re[c][s] = v.real();
            f.im[c][s] = v.imag();
          }
        }
  return f;
}

SpinorField apply_discrete(const FlatOperator& op, const SpinorField& field,
                           const Lattice& lat, const GammaRep& rep) {
  lat.validate();
  if (field.extent != lat.extent) throw InvalidInput("field and lattice extents differ");
  const OperatorParts parts = operator_parts(op, rep);
  const complex i_unit(0.0, 1.0);
  std::array<kernels::PlanarMatrix4, 4> stencil;
  for (int j = 0; j < 4; ++j) stencil[j] = planar((i_unit / (2.0 * lat.h)) * parts.c[j]);
  const kernels::PlanarMatrix4 diag = planar(parts.d);
  const bool has_diag = !parts.d.isZero(0.0);

  const int n = lat.extent;
  const auto nn = static_cast<std::size_t>(n);
  SpinorField out(n);
  RowScratch fwd(n), bwd(n);
  auto row_offset = [&](int x1, int x2, int x3) {
    return nn * (static_cast<std::size_t>(x1) +
                 nn * (static_cast<std::size_t>(x2) + nn * static_cast<std::size_t>(x3)));
  };

  for (int x3 = 0; x3 < n; ++x3)
    for (int x2 = 0; x2 < n; ++x2)
      for (int x1 = 0; x1 < n; ++x1) {
        const std::size_t r = row_offset(x1, x2, x3);
        const kernels::SpinorRow target = mut_row(out, r);
        if (has_diag) kernels::matrix_axpy(nn, diag, const_row(field, r), nullptr, target);

        // axis 0 runs along the row: wrapped neighbours go through scratch rows
        for (int c = 0; c < 4; ++c) {
          for (int x0 = 0; x0 < n; ++x0) {
            const std::size_t up = r + static_cast<std::size_t>((x0 + 1) % n);
            const std::size_t dn = r + static_cast<std::size_t>((x0 + n - 1) % n);
            fwd.re[c][x0] = field.re[c][up];
            fwd.im[c][x0] = field.im[c][up];
            bwd.re[c][x0] = field.re[c][dn];
            bwd.im[c][x0] = field.im[c][dn];
          }
        }
        const kernels::SpinorRowConst bwd_view = bwd.view();
        kernels::matrix_axpy(nn, stencil[0], fwd.view(), &bwd_view, target);

        const std::array<int, 3> x{x1, x2, x3};
        for (int axis = 1; axis < 4; ++axis) {
          std::array<int, 3> plus = x, minus = x;
          plus[axis - 1] = (x[axis - 1] + 1) % n;
          minus[axis - 1] = (x[axis - 1] + n - 1) % n;
          const kernels::SpinorRowConst back =
              const_row(field, row_offset(minus[0], minus[1], minus[2]));
          kernels::matrix_axpy(nn, stencil[axis],
                               const_row(field, row_offset(plus[0], plus[1], plus[2])),
                               &back, target);
        }
      }
  return out;
}

SpinorField apply_discrete(const FlatOperator& op, const PlaneWave& w, const Lattice& lat,
                           const GammaRep& rep) {
  return apply_discrete(op, sample_plane_wave(w, lat), lat, rep);
}

double discretization_error(const FlatOperator& op, const PlaneWave& w, const Lattice& lat,
                            const GammaRep& rep) {
  const SpinorField got = apply_discrete(op, w, lat, rep);
  const ComplexVector4 amp = symbol_matrix(op, w.p, rep) * w.u;
  const int n = lat.extent;
  const auto nn = static_cast<std::size_t>(n);
  RowScratch expected(n);
  double worst = 0.0;
  std::size_t r = 0;
  for (int x3 = 0; x3 < n; ++x3)
    for (int x2 = 0; x2 < n; ++x2)
      for (int x1 = 0; x1 < n; ++x1, r += nn) {
        for (int x0 = 0; x0 < n; ++x0) {
          const complex e = std::polar(1.0, -phase_at(w.p, lat.h, x0, x1, x2, x3));
          for (int c = 0; c < 4; ++c) {
            const complex v = amp[c] * e;
            expected.re[c][x0] = v.real();
            expected.im[c][x0] = v.imag();
          }
        }
        for (int c = 0; c < 4; ++c) {
          worst = std::max(worst, kernels::max_abs_diff(nn, got.re[c].data() + r,
                                                        got.im[c].data() + r,
                                                        expected.re[c].data(),
                                                        expected.im[c].data()));
        }
      }
  return worst;
}

double symbol_residual(const FlatOperator& op, const RealVector4& p, const GammaRep& rep) {
  const Signature& eta = rep.signature();
  const Metric4 flat = Metric4::diagonal(eta);
  const RealVector4 p_up = raise_eta(eta, p);
  const ComplexMatrix4 symbol = symbol_matrix(op, p, rep);
  std::map<std::string, OneForm> forms;
  if (op.A) forms.emplace("A", OneForm(op.A->components, "A"));

  ComplexMatrix4 element;
  switch (op.kind) {
    case OperatorKind::dirac_mass: {
      const double mass = std::sqrt(std::abs(norm_squared(flat, Tangent(p_up))));
      if (!(mass > 0.0)) throw NullVectorForM("null momentum has no mass-shell partner M");
      const EvalContext ctx(flat, forms, Tangent(p_up / mass), rep.rep_id());
      element = mass * evaluate(AlgebraElement(Generator::M()), ctx);
      const FlatOperator on_shell{OperatorKind::dirac_mass, mass, op.A};
      return max_norm(ComplexMatrix4(symbol_matrix(on_shell, p, rep) - element));
    }
    case OperatorKind::dirac_A: {
      const EvalContext ctx(flat, forms, Tangent(p_up), rep.rep_id());
      element = evaluate(AlgebraElement(Generator::F({"A"})), ctx);
      break;
    }
    case OperatorKind::u1_covariant: {
      const EvalContext ctx(flat, forms, Tangent(p_up), rep.rep_id());
      element = gamma_element(ctx, *op.A, 1.0);
      break;
    }
  }
  return max_norm(ComplexMatrix4(symbol - element));
}

ConvergenceReport convergence_study(const FlatOperator& op, const PlaneWave& w,
                                    const GammaRep& rep, int levels, int base_extent) {
  if (levels < 2) throw InvalidInput("convergence study needs at least two levels");
  ConvergenceReport r;
  for (int l = 0; l < levels; ++l) {
    const Lattice lat = Lattice::periodic(base_extent << l);
    r.extents.push_back(lat.extent);
    r.steps.push_back(lat.h);
    r.max_errors.push_back(discretization_error(op, w, lat, rep));
  }
  for (std::size_t l = 0; l + 1 < r.max_errors.size(); ++l) {
    r.orders.push_back(std::log2(r.max_errors[l] / r.max_errors[l + 1]));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(levels);
  for (int l = 0; l < levels; ++l) {
    const double x = std::log(r.steps[l]);
    const double y = std::log(r.max_errors[l]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  r.order_estimate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  r.symbol_residual = symbol_residual(op, w.p, rep);
  return r;
}

ComplexMatrix4 gamma_element(const EvalContext& ctx, const OneForm& A, double m) {
  const RealVector4 a_up = raise_eta(ctx.frame().eta, ctx.frame().to_frame(A));
  return ctx.slash_y() - m * slash(ctx.rep(), a_up);
}

GammaNormTrace gamma_norm_trace(const EvalContext& ctx, const OneForm& A, double m) {
  auto f = [&](double lambda) {
    const EvalContext c = ctx.with_y(Tangent(lambda * ctx.y().components));
    const ComplexMatrix4 mm = evaluate(AlgebraElement(Generator::M()), c);
    return 0.25 * numeric_trace(mm * gamma_element(c, A, m)).real();
  };
  GammaNormTrace r;
  r.value = f(1.0);
  const double f2 = f(2.0);
  r.homogeneous_part = f2 - r.value;
  r.constant_part = 2.0 * r.value - f2;
  for (double lambda : {0.5, 2.0, 4.0}) {
    r.reconstruction_residual =
        std::max(r.reconstruction_residual,
                 std::abs(f(lambda) - lambda * r.homogeneous_part - r.constant_part));
  }
  r.non_homogeneous = std::abs(r.constant_part) > 1e-12 * std::max(1.0, std::abs(r.value));
  return r;
}

}  // namespace cliff
