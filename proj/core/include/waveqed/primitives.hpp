#ifndef WAVEQED_PRIMITIVES_HPP
#define WAVEQED_PRIMITIVES_HPP

#include "waveqed/params.hpp"

namespace waveqed::prim {

/// (e^w - 1)/w with the removable singularity handled by a 6-term series
/// below |w| = 1e-4.
Complex ephi1(Complex w);

/// E1(z) = int_0^R e^{izx} dx = (e^{izR} - 1)/(iz).
Complex e1(Complex z, double r);

/// Mom_m(a) = int_0^R x^m e^{iax} dx, m <= 8. Series below |aR| = 0.5,
/// upward recursion from E1 otherwise.
Complex moment(int m, Complex a, double r);

/// G(a,b) = int_0^R dx' e^{iax'} int_0^{x'} dx e^{ibx}  (lower triangle).
Complex triangle(Complex a, Complex b, double r);

/// K(a,b) = int over {x,x' >= 0, x+x' <= R} of e^{iax'} e^{ibx}.
Complex corner(Complex a, Complex b, double r);

/// Complement: int over {0 <= x,x' <= R, x+x' >= R} = E1(a)E1(b) - K(a,b).
Complex anti_corner(Complex a, Complex b, double r);

}  // namespace waveqed::prim

#endif
