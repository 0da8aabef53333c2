#include <cmath>
#include <complex>
#include <filesystem>
#include <functional>
#include <iostream>

#include "lgh/io.hpp"

using namespace lgh;

namespace {

using Fn = std::function<cplx(const FactorPoint&, const FactorPoint&)>;

void emit(const std::filesystem::path& dir, const std::string& name, const ProductGrid& grid, const Fn& fn) {
  write_text_file(dir / name, grid_to_string(GridFunction::sample(grid, fn)));
  std::cout << name << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixture_grids OUTDIR\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  const double sqrt2 = std::sqrt(2.0);
  const FactorGrid circle = FactorGrid::circle(3);
  const FactorGrid sphere = FactorGrid::for_band(GroupKind::SU2, 2);
  const ProductGrid torus{circle, circle};
  const ProductGrid s3{FactorGrid::trivial(), sphere};
  const ProductGrid t1s3{circle, sphere};

  emit(dir, "s3-h-plus-sqrt2.grid", s3, [&](const FactorPoint&, const FactorPoint& x) { return cplx(euler_h(x.x) + sqrt2); });
  emit(dir, "s3-tr.grid", s3, [](const FactorPoint&, const FactorPoint& x) { return cplx(euler_tr(x.x)); });
  emit(dir, "t2-sin.grid", torus, [](const FactorPoint& t, const FactorPoint& x) { return cplx(std::sin(t.t + x.t)); });
  emit(dir, "t2-half-cos.grid", torus,
       [](const FactorPoint& t, const FactorPoint& x) { return cplx(-0.5 * std::cos(t.t + x.t)); });
  auto aq = [&](cplx tail) {
    return [=](const FactorPoint& t, const FactorPoint& x) {
      return std::cos(t.t) + (std::sin(t.t) + sqrt2) * euler_h(x.x) + tail;
    };
  };
  emit(dir, "t1s3-aq.grid", t1s3, aq(cplx(1, 0)));
  emit(dir, "t1s3-aq-imag.grid", t1s3, aq(cplx(0, 1)));
  emit(dir, "t1s3-sin-plus-tr.grid", t1s3,
       [](const FactorPoint& t, const FactorPoint& x) { return cplx(std::sin(t.t) + euler_tr(x.x)); });
  return 0;
}
