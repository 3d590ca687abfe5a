#include "yamabe/geometry/curvature.hpp"

namespace yamabe {

namespace {

const std::vector<Slot> kUpDownDown{Slot::Contravariant, Slot::Covariant, Slot::Covariant};
const std::vector<Slot> kUpUp{Slot::Contravariant, Slot::Contravariant};

}  // namespace

CurvaturePack curvature_pack(const LocalGeometry& geo, bool with_bach) {
  CurvaturePack pack;
  pack.metric = geo.metric().value();
  pack.inverse_metric = geo.inverse_metric().value(kUpUp);
  pack.christoffel = geo.christoffel().value(kUpDownDown);
  pack.riemann = geo.riemann().value();
  pack.ricci = geo.ricci().value();
  pack.scalar = geo.scalar().value();
  if (geo.dim() >= 3) {
    pack.schouten = geo.schouten().value();
    pack.weyl = geo.weyl().value();
    if (geo.order() >= 3) pack.cotton = geo.cotton().value();
    if (with_bach && geo.order() >= 4) pack.bach = geo.bach().value();
  }
  pack.diagnostics = geo.diagnostics();
  return pack;
}

CurvaturePack curvature_pack(const MetricField& m, std::span<const double> p, int order,
                             bool with_bach) {
  return curvature_pack(LocalGeometry(m, p, order), with_bach);
}

TensorValue christoffel(const MetricField& m, std::span<const double> p) {
  return LocalGeometry(m, p, 1).christoffel().value(kUpDownDown);
}

TensorValue riemann(const MetricField& m, std::span<const double> p) {
  return LocalGeometry(m, p, 2).riemann().value();
}

std::pair<TensorValue, double> ricci_scalar(const MetricField& m, std::span<const double> p) {
  LocalGeometry geo(m, p, 2);
  return {geo.ricci().value(), geo.scalar().value()};
}

TensorValue schouten(const MetricField& m, std::span<const double> p) {
  return LocalGeometry(m, p, 2).schouten().value();
}

TensorValue weyl(const MetricField& m, std::span<const double> p) {
  return LocalGeometry(m, p, 2).weyl().value();
}

TensorValue cotton(const MetricField& m, std::span<const double> p) {
  return LocalGeometry(m, p, 3).cotton().value();
}

TensorValue bach(const MetricField& m, std::span<const double> p) {
  return LocalGeometry(m, p, 4).bach().value();
}

TensorValue hessian(const MetricField& m, const Expr& f, std::span<const double> p) {
  LocalGeometry geo(m, p, 2);
  return geo.hessian(geo.scalar_field(f)).value();
}

double laplacian(const MetricField& m, const Expr& f, std::span<const double> p) {
  LocalGeometry geo(m, p, 2);
  return geo.laplacian(geo.scalar_field(f)).value();
}

double grad_inner(const MetricField& m, const Expr& f, const Expr& h, std::span<const double> p) {
  LocalGeometry geo(m, p, 1);
  return geo.inner(geo.gradient(geo.scalar_field(f)), geo.gradient(geo.scalar_field(h))).value();
}

}  // namespace yamabe
