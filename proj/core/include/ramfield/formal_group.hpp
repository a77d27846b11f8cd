#pragma once

#include <ramfield/padic.hpp>
#include <ramfield/series.hpp>

#include <map>
#include <utility>

namespace ramfield {

// Truncated power series in X, Y with p-adic coefficients.
struct BivarSeries {
    int p = 0;
    int maxdeg = 0;
    std::map<std::pair<int, int>, PadicScalar> coeffs;  // (degX, degY) -> coefficient, nonzero

    PadicScalar coeff(int a, int b) const;
    // Residue of an integral coefficient modulo p^prec.
    Laurent::Coeff residue(int a, int b, int prec) const;
};

// Lubin-Tate group law with [p](X) = pX + X^p, known modulo p^prec through
// total degree maxdeg.
struct GroupLaw {
    int p = 0;
    int maxdeg = 0;
    int prec = 0;
    BivarSeries F;
};

GroupLaw build_group_law(int p, int maxdeg, int prec);

// F(a, b) on raw series. Omitted monomials of total degree > maxdeg are
// accounted for in the tail; pure X / pure Y monomials beyond degree 1 vanish.
Series fg_add(const GroupLaw& law, const Series& a, const Series& b, long cap);
Series fg_mul_p(const Series& a, long cap);

XSeries fg_add(const GroupLaw& law, const XSeries& a, const XSeries& b);
XSeries fg_mul_p(const XSeries& a);

// Partial derivatives of F as bivariate series.
BivarSeries derivative_x(const BivarSeries& F);
BivarSeries derivative_y(const BivarSeries& F);

// sum F_ab a^i b^j for an arbitrary bivariate series.
Series bivar_eval(const BivarSeries& F, int prec, const Series& a, const Series& b, long cap);

// Smallest group-law degree whose truncation keeps fg_add exact below cap
// for arguments of weight >= 1.
int group_degree_for_cap(long cap);

}  // namespace ramfield
