#include "waveqed/primitives.hpp"

#include <cmath>

namespace waveqed::prim {

Complex ephi1(Complex w) {
  if (std::abs(w) < 1e-4) {
    Complex s{1.0, 0.0}, term{1.0, 0.0};
    for (int n = 1; n <= 5; ++n) {
      term *= w / static_cast<double>(n + 1);
      s += term;
    }
    return s;
  }
  return (std::exp(w) - 1.0) / w;
}

Complex e1(Complex z, double r) { return r * ephi1(kI * z * r); }

Complex moment(int m, Complex a, double r) {
  const Complex w = kI * a * r;
  if (std::abs(w) < 0.5) {
    // R^{m+1} sum_n w^n / (n! (m+n+1))
    Complex s = 1.0 / static_cast<double>(m + 1);
    Complex term{1.0, 0.0};
    for (int n = 1; n <= 26; ++n) {
      term *= w / static_cast<double>(n);
      s += term / static_cast<double>(m + n + 1);
    }
    return std::pow(r, m + 1) * s;
  }
  Complex mom = e1(a, r);
  const Complex eiar = std::exp(w);
  double rm = 1.0;
  for (int j = 1; j <= m; ++j) {
    rm *= r;
    mom = (rm * eiar - static_cast<double>(j) * mom) / (kI * a);
  }
  return mom;
}

Complex triangle(Complex a, Complex b, double r) {
  if (std::abs(b) * r >= 1e-4)
    return (e1(a + b, r) - e1(a, r)) / (kI * b);
  // series in b: sum_n (ib)^n/(n+1)! Mom_{n+1}(a)
  Complex s{0.0, 0.0};
  Complex coeff{1.0, 0.0};
  double fact = 1.0;
  for (int n = 0; n <= 5; ++n) {
    fact *= static_cast<double>(n + 1);
    s += coeff / fact * moment(n + 1, a, r);
    coeff *= kI * b;
  }
  return s;
}

Complex corner(Complex a, Complex b, double r) {
  if (std::abs(b) * r >= 1e-4)
    return (std::exp(kI * b * r) * e1(a - b, r) - e1(a, r)) / (kI * b);
  // int_0^R e^{iax'} (R-x') ephi1(ib(R-x')) dx' expanded in b
  const Complex eiar = std::exp(kI * a * r);
  Complex s{0.0, 0.0};
  Complex coeff{1.0, 0.0};
  double fact = 1.0;
  for (int n = 0; n <= 5; ++n) {
    fact *= static_cast<double>(n + 1);
    s += coeff / fact * eiar * moment(n + 1, -a, r);
    coeff *= kI * b;
  }
  return s;
}

Complex anti_corner(Complex a, Complex b, double r) {
  return e1(a, r) * e1(b, r) - corner(a, b, r);
}

}  // namespace waveqed::prim
