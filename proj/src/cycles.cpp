#include "ramlim/cycles.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ramlim/errors.hpp"
#include "ramlim/foliation.hpp"
#include "ramlim/linalg.hpp"
#include "ramlim/resultant.hpp"

namespace ramlim {

namespace {

long binom2(long n) { return n * (n - 1) / 2; }

int compare_basis(const std::vector<HPoly>& a, const std::vector<HPoly>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int c = HPoly::compare(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

int compare_term(const CycleTerm& x, const CycleTerm& y) {
    const int kx = static_cast<int>(x.node.index());
    const int ky = static_cast<int>(y.node.index());
    if (kx != ky) return kx < ky ? -1 : 1;
    if (kx == 0) {
        const auto& a = std::get<IntersectionTerm>(x.node);
        const auto& b = std::get<IntersectionTerm>(y.node);
        const int c = HPoly::compare(a.p, b.p);
        if (c != 0) return c;
        return HPoly::compare(a.q, b.q);
    }
    const auto& a = std::get<RamTerm>(x.node);
    const auto& b = std::get<RamTerm>(y.node);
    const int c = HPoly::compare(a.p, b.p);
    if (c != 0) return c;
    return compare_basis(a.basis, b.basis);
}

CycleExpr canonicalize(std::vector<CycleTerm> terms) {
    for (auto& t : terms) {
        if (auto* in = std::get_if<IntersectionTerm>(&t.node)) {
            in->p = normalized(in->p);
            in->q = normalized(in->q);
            if (HPoly::compare(in->p, in->q) > 0) std::swap(in->p, in->q);
        } else {
            auto& ram = std::get<RamTerm>(t.node);
            ram.p = normalized(ram.p);
            ram.basis = canonical_basis(ram.basis);
        }
    }
    std::sort(terms.begin(), terms.end(), [](const CycleTerm& a, const CycleTerm& b) {
        return compare_term(a, b) < 0;
    });
    std::vector<CycleTerm> merged;
    for (auto& t : terms) {
        if (!merged.empty() && compare_term(merged.back(), t) == 0)
            merged.back().mult += t.mult;
        else
            merged.push_back(std::move(t));
    }
    std::vector<CycleTerm> out;
    for (auto& t : merged) {
        if (t.mult == 0) continue;
        if (term_degree(t) == 0) continue;   // the empty cycle
        out.push_back(std::move(t));
    }
    return CycleExpr{std::move(out)};
}

} // namespace

std::vector<HPoly> canonical_basis(const std::vector<HPoly>& basis) {
    if (basis.empty()) throw InvariantViolation("empty linear system basis");
    int degree = -1;
    for (const auto& b : basis) {
        if (b.is_zero()) throw InvariantViolation("zero element in basis");
        if (degree < 0) degree = b.deg();
        else if (b.deg() != degree)
            throw InvariantViolation("basis of mixed degrees");
    }
    const auto monos = monomials_of_degree(degree);
    QMatrix rows;
    rows.reserve(basis.size());
    for (const auto& b : basis) rows.push_back(coeff_vector(b, monos));
    // row-reduce; keep pivot-normalized rows
    const std::size_t cols = monos.size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[r]);
        const Rational inv = 1 / rows[r][c];
        for (std::size_t j = c; j < cols; ++j) rows[r][j] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rational f = rows[i][c];
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    if (r != rows.size())
        throw InvariantViolation("linearly dependent basis");
    std::vector<HPoly> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        HPoly p;
        for (std::size_t j = 0; j < cols; ++j)
            if (row[j] != 0) p += HPoly::monomial(row[j], monos[j]);
        out.push_back(std::move(p));
    }
    return out;
}

bool span_divisible(const std::vector<HPoly>& basis, const HPoly& divisor) {
    if (divisor.is_zero() || divisor.is_constant())
        throw InvariantViolation("span_divisible: trivial divisor");
    const int d = basis.front().deg();
    const int gdeg = d - divisor.deg();
    const auto monos = monomials_of_degree(d);
    const auto gmonos = gdeg >= 0 ? monomials_of_degree(gdeg) : std::vector<Expo>{};
    const std::size_t nb = basis.size();
    QMatrix mat(monos.size(), QVec(nb + gmonos.size(), Rational(0)));
    for (std::size_t k = 0; k < nb; ++k) {
        const QVec v = coeff_vector(basis[k], monos);
        for (std::size_t r = 0; r < monos.size(); ++r) mat[r][k] = v[r];
    }
    for (std::size_t g = 0; g < gmonos.size(); ++g) {
        const HPoly prod = divisor * HPoly::monomial(Rational(1), gmonos[g]);
        const QVec v = coeff_vector(prod, monos);
        for (std::size_t r = 0; r < monos.size(); ++r) mat[r][nb + g] = -v[r];
    }
    for (const auto& k : kernel(std::move(mat)))
        for (std::size_t i = 0; i < nb; ++i)
            if (k[i] != 0) return true;
    return false;
}

bool has_finite_ramification(const HPoly& p, const std::vector<HPoly>& basis) {
    if (p.is_zero() || p.is_constant())
        throw InvariantViolation("ramification needs a nonconstant curve");
    if (!is_squarefree(p)) return false;
    const auto canon = canonical_basis(basis);   // also checks independence
    // Wronskian gcd criterion; the auxiliary curve only needs to be prime to p.
    Rng rng(0x5eedU + static_cast<std::uint64_t>(p.deg()));
    for (int attempt = 0; attempt < 64; ++attempt) {
        const HPoly q = random_linear_form(rng, 3 + attempt / 16);
        if (!is_coprime(q, p)) continue;
        const Derivation d = jacobi_derivation(p, q);
        if (d.is_zero()) continue;
        const HPoly w = wronskian(d, canon);
        if (w.is_zero()) return false;           // degenerate on all of p
        return gcd(w, p).is_constant();
    }
    throw InvariantViolation("no auxiliary curve prime to p found");
}

CycleExpr intersection_cycle(const Rational& mult, const HPoly& p, const HPoly& q) {
    if (p.is_constant() || q.is_constant())
        throw InvariantViolation("intersection of a constant");
    if (!is_coprime(p, q))
        throw InvariantViolation("intersection terms need coprime curves: gcd(" +
                                 to_string(p) + ", " + to_string(q) + ") != 1");
    return canonicalize({CycleTerm{mult, IntersectionTerm{p, q}}});
}

CycleExpr ramification_term(const Rational& mult, const HPoly& p,
                            const std::vector<HPoly>& basis) {
    if (!has_finite_ramification(p, basis))
        throw InvariantViolation("infinite ramification scheme on " + to_string(p));
    return canonicalize({CycleTerm{mult, RamTerm{p, basis}}});
}

CycleExpr operator+(const CycleExpr& a, const CycleExpr& b) {
    std::vector<CycleTerm> all = a.terms;
    all.insert(all.end(), b.terms.begin(), b.terms.end());
    return canonicalize(std::move(all));
}

CycleExpr CycleExpr::scaled(const Rational& c) const {
    std::vector<CycleTerm> all = terms;
    for (auto& t : all) t.mult *= c;
    return canonicalize(std::move(all));
}

bool operator==(const CycleExpr& a, const CycleExpr& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        if (a.terms[i].mult != b.terms[i].mult) return false;
        if (compare_term(a.terms[i], b.terms[i]) != 0) return false;
    }
    return true;
}

Rational term_degree(const CycleTerm& t) {
    if (const auto* in = std::get_if<IntersectionTerm>(&t.node))
        return Rational(in->p.deg()) * Rational(in->q.deg());
    const auto& ram = std::get<RamTerm>(t.node);
    const long p = ram.p.deg();
    const long r1 = static_cast<long>(ram.basis.size());
    const long d = ram.basis.front().deg();
    return Rational(p * r1 * d + binom2(r1) * p * (p - 3));
}

Rational cycle_degree(const CycleExpr& c) {
    Rational acc(0);
    for (const auto& t : c.terms) acc += t.mult * term_degree(t);
    return acc;
}

namespace {

BinaryForm realize_term(const CycleTerm& t, const CoordChange& m, const HPoly& auxq) {
    if (const auto* in = std::get_if<IntersectionTerm>(&t.node)) {
        const BinaryForm r =
            resultant_x2(apply_coord_change(in->p, m), apply_coord_change(in->q, m));
        if (r.is_zero())
            throw InvariantViolation("zero resultant: intersection not proper");
        return r;
    }
    const auto& ram = std::get<RamTerm>(t.node);
    if (!is_coprime(auxq, ram.p))
        throw InvariantViolation("auxiliary curve shares a component with " +
                                 to_string(ram.p));
    const HPoly pm = apply_coord_change(ram.p, m);
    const HPoly qm = apply_coord_change(auxq, m);
    std::vector<HPoly> basism;
    basism.reserve(ram.basis.size());
    for (const auto& b : ram.basis) basism.push_back(apply_coord_change(b, m));
    const Derivation d = jacobi_derivation(pm, qm);
    if (d.is_zero()) throw InvariantViolation("degenerate jacobi derivation");
    const HPoly w = wronskian(d, basism);
    if (w.is_zero()) throw InvariantViolation("degenerate Wronskian");
    const BinaryForm num = resultant_x2(w, pm);
    if (num.is_zero())
        throw InvariantViolation("zero resultant: ramification not finite");
    const BinaryForm den =
        resultant_x2(qm, pm).pow(static_cast<int>(binom2(static_cast<long>(ram.basis.size()))));
    const auto quotient = num.divided_by(den);
    if (!quotient)
        throw InexactDivision("ramification form not divisible by auxiliary part", -1);
    return *quotient;
}

} // namespace

ChowForm realize_chow(const CycleExpr& c, const CoordChange& m, const HPoly& auxq) {
    long clearing = 1;
    for (const auto& t : c.terms)
        clearing = std::lcm(clearing, t.mult.get_den().get_si());
    BinaryForm num = BinaryForm::constant(Rational(1));
    BinaryForm den = BinaryForm::constant(Rational(1));
    for (const auto& t : c.terms) {
        const Rational scaled_mult = t.mult * Rational(clearing);
        const long k = scaled_mult.get_num().get_si();
        const BinaryForm f = realize_term(t, m, auxq);
        if (k > 0) num = num * f.pow(static_cast<int>(k));
        else den = den * f.pow(static_cast<int>(-k));
    }
    const auto q = num.divided_by(den);
    if (!q)
        throw InexactDivision("cycle realization is not effective", -1);
    ChowForm out{q->normalized(), clearing};
    const Rational expect = cycle_degree(c) * Rational(clearing);
    if (Rational(out.form.deg()) != expect)
        throw InvariantViolation("chow form degree mismatch");
    return out;
}

bool chow_equal(const ChowForm& a, const ChowForm& b) {
    const long l = std::lcm(a.clearing, b.clearing);
    const BinaryForm fa = a.form.pow(static_cast<int>(l / a.clearing));
    const BinaryForm fb = b.form.pow(static_cast<int>(l / b.clearing));
    return fa == fb;
}

HPoly draw_aux_linear(const std::vector<const CycleExpr*>& cycles, Rng& rng) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        const HPoly q = random_linear_form(rng, 3 + attempt / 32);
        bool ok = true;
        for (const CycleExpr* c : cycles)
            for (const auto& t : c->terms)
                if (const auto* ram = std::get_if<RamTerm>(&t.node))
                    if (!is_coprime(q, ram->p)) ok = false;
        if (ok) return q;
    }
    throw InvariantViolation("no auxiliary linear form prime to all curves");
}

bool cycles_equal(const CycleExpr& a, const CycleExpr& b, int trials,
                  std::uint64_t seed) {
    if (cycle_degree(a) != cycle_degree(b)) return false;
    Rng rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const HPoly auxq = draw_aux_linear({&a, &b}, rng);
        bool compared = false;
        for (int redraw = 0; redraw < 25 && !compared; ++redraw) {
            const CoordChange m = random_coord_change(rng.fork(), 4);
            try {
                const ChowForm fa = realize_chow(a, m, auxq);
                const ChowForm fb = realize_chow(b, m, auxq);
                compared = true;
                if (!chow_equal(fa, fb)) return false;
            } catch (const DegenerateProjection&) {
                continue;
            }
        }
        if (!compared)
            throw DegenerateProjection("no usable coordinate change in 25 draws");
    }
    return true;
}

std::string to_string(const CycleExpr& c) {
    if (c.terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : c.terms) {
        const bool neg = t.mult < 0;
        const Rational amult = neg ? Rational(-t.mult) : t.mult;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        if (amult != 1) out << to_string(amult) << "*";
        if (const auto* in = std::get_if<IntersectionTerm>(&t.node)) {
            out << "[" << to_string(in->p) << " . " << to_string(in->q) << "]";
        } else {
            const auto& ram = std::get<RamTerm>(t.node);
            out << "R(" << to_string(ram.p) << "; ";
            for (std::size_t i = 0; i < ram.basis.size(); ++i) {
                if (i) out << ", ";
                out << to_string(ram.basis[i]);
            }
            out << ")";
        }
    }
    return out.str();
}

} // namespace ramlim
