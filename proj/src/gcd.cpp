#include <algorithm>

#include "ramlim/errors.hpp"
#include "ramlim/hpoly.hpp"

namespace ramlim {

std::optional<HPoly> divides(const HPoly& p, const HPoly& q) {
    if (p.is_zero()) throw InvariantViolation("division by zero polynomial");
    HPoly quotient;
    HPoly rem = q;
    const Expo& lp = p.leading_expo();
    const Rational& cp = p.leading_coeff();
    while (!rem.is_zero()) {
        const Expo& lr = rem.leading_expo();
        Expo d{lr[0] - lp[0], lr[1] - lp[1], lr[2] - lp[2]};
        if (d[0] < 0 || d[1] < 0 || d[2] < 0) return std::nullopt;
        const HPoly t = HPoly::monomial(rem.leading_coeff() / cp, d);
        quotient += t;
        rem -= t * p;
    }
    return quotient;
}

namespace {

HPoly exact_div(const HPoly& q, const HPoly& p) {
    auto r = divides(p, q);
    if (!r) throw InvariantViolation("exact division failed");
    return *r;
}

// Pseudo-remainder: lc_v(b)^(deg_v a - deg_v b + 1) * a  ==  q*b + prem.
HPoly prem(const HPoly& a, const HPoly& b, int v) {
    const int db = b.degree_in(v);
    const HPoly d = b.coeff_in(v, db);
    HPoly r = a;
    int e = a.degree_in(v) - db + 1;
    while (!r.is_zero() && r.degree_in(v) >= db) {
        const int dr = r.degree_in(v);
        const HPoly lcr = r.coeff_in(v, dr);
        r = d * r - lcr * HPoly::variable(v).pow(dr - db) * b;
        --e;
    }
    for (; e > 0; --e) r = r * d;
    return r;
}

HPoly gcd_rec(HPoly p, HPoly q);

// gcd of the coefficients of p viewed as a polynomial in v.
HPoly content_in(const HPoly& p, int v) {
    HPoly c;
    for (int k = 0; k <= p.degree_in(v); ++k) {
        const HPoly ck = p.coeff_in(v, k);
        if (ck.is_zero()) continue;
        c = c.is_zero() ? ck : gcd_rec(c, ck);
        if (c.is_constant()) break;
    }
    return c;
}

HPoly gcd_rec(HPoly p, HPoly q) {
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    if (p.is_constant() || q.is_constant()) return HPoly(Rational(1));

    int v = 0, best = -1;
    for (int cand = 0; cand < 3; ++cand) {
        const int d = std::max(p.degree_in(cand), q.degree_in(cand));
        if (d > best) { best = d; v = cand; }
    }
    const int dp = p.degree_in(v), dq = q.degree_in(v);
    if (dp == 0) return gcd_rec(content_in(q, v), p);
    if (dq == 0) return gcd_rec(content_in(p, v), q);

    const HPoly cp = content_in(p, v);
    const HPoly cq = content_in(q, v);
    const HPoly c = gcd_rec(cp, cq);
    HPoly a = exact_div(p, cp);
    HPoly b = exact_div(q, cq);
    if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);

    // subresultant remainder sequence on the primitive parts
    HPoly g(Rational(1)), h(Rational(1));
    for (;;) {
        const int delta = a.degree_in(v) - b.degree_in(v);
        HPoly r = prem(a, b, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) return c;     // primitive parts are coprime in v
        a = b;
        b = exact_div(r, g * h.pow(delta));
        g = a.coeff_in(v, a.degree_in(v));
        if (delta > 0) h = exact_div(g.pow(delta), h.pow(delta - 1));
    }
    return c * exact_div(b, content_in(b, v));
}

} // namespace

HPoly gcd(const HPoly& p, const HPoly& q) {
    if (p.is_zero() && q.is_zero())
        throw InvariantViolation("gcd(0,0) undefined");
    return normalized(gcd_rec(p, q));
}

bool is_coprime(const HPoly& p, const HPoly& q) {
    return gcd(p, q).is_constant();
}

bool is_squarefree(const HPoly& p) {
    if (p.is_zero() || p.is_constant())
        throw InvariantViolation("is_squarefree needs a nonconstant polynomial");
    HPoly g = p;
    for (int v = 0; v < 3; ++v) {
        const HPoly d = p.partial(v);
        if (d.is_zero()) continue;
        g = gcd(g, d);
        if (g.is_constant()) return true;
    }
    return g.is_constant();
}

} // namespace ramlim
