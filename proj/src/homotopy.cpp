#include "grcat/homotopy.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "grcat/rng.hpp"

namespace grcat {

/* ---- PMat ---- */

PMat PMat::zero(const CatPtr& base, std::vector<int> src, std::vector<int> dst) {
    PMat m;
    m.base = base;
    m.src = std::move(src);
    m.dst = std::move(dst);
    m.e.reserve(m.src.size() * m.dst.size());
    for (size_t r = 0; r < m.dst.size(); ++r)
        for (size_t c = 0; c < m.src.size(); ++c)
            m.e.push_back(base->zero_mor(m.src[c], m.dst[r]));
    return m;
}

PMat PMat::identity(const CatPtr& base, std::vector<int> objs) {
    PMat m = zero(base, objs, objs);
    for (size_t i = 0; i < m.src.size(); ++i) m.at(i, i) = base->id_mor(m.src[i]);
    return m;
}

PMat pmat_mul(const PMat& a, const PMat& b) {
    if (a.src.size() != b.dst.size()) throw Error("ShapeMismatch", "pmat_mul");
    PMat r = PMat::zero(a.base, b.src, a.dst);
    for (size_t i = 0; i < a.dst.size(); ++i)
        for (size_t j = 0; j < b.src.size(); ++j) {
            Mor acc = a.base->zero_mor(b.src[j], a.dst[i]);
            for (size_t k = 0; k < a.src.size(); ++k)
                if (!mor_is_zero(a.at(i, k)) && !mor_is_zero(b.at(k, j)))
                    acc = mor_add(acc, a.base->compose(a.at(i, k), b.at(k, j)));
            r.at(i, j) = std::move(acc);
        }
    return r;
}

PMat pmat_add(const PMat& a, const PMat& b) {
    PMat r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = mor_add(r.e[i], b.e[i]);
    return r;
}

PMat pmat_scale(const Scalar& s, const PMat& a) {
    PMat r = a;
    for (auto& m : r.e) m = mor_scale(s, m);
    return r;
}

bool pmat_eq(const PMat& a, const PMat& b) {
    if (a.src != b.src || a.dst != b.dst) return false;
    for (size_t i = 0; i < a.e.size(); ++i)
        if (!mor_eq(a.e[i], b.e[i])) return false;
    return true;
}

bool pmat_is_zero(const PMat& a) {
    for (const auto& m : a.e)
        if (!mor_is_zero(m)) return false;
    return true;
}

bool pmat_is_identity(const PMat& a) {
    if (a.src != a.dst) return false;
    return pmat_eq(a, PMat::identity(a.base, a.src));
}

std::optional<PMat> pmat_inverse(const PMat& a) {
    if (a.src.size() != a.dst.size()) return std::nullopt;
    const FinKCat& C = *a.base;
    // unknown entries of N : dst -> src; conditions N∘a = id_src, a∘N = id_dst
    struct Slot {
        size_t r, c;
        int off, dim;
    };
    std::vector<Slot> slots;
    int total = 0;
    for (size_t r = 0; r < a.src.size(); ++r)
        for (size_t c = 0; c < a.dst.size(); ++c) {
            int d = C.dim(a.dst[c], a.src[r]);
            if (d == 0) continue;
            slots.push_back({r, c, total, d});
            total += d;
        }
    auto unflatten = [&](const Vec& v) {
        PMat n = PMat::zero(a.base, a.dst, a.src);
        for (const auto& s : slots)
            for (int k = 0; k < s.dim; ++k)
                n.at(s.r, s.c).c[static_cast<size_t>(k)] = v[static_cast<size_t>(s.off + k)];
        return n;
    };
    auto flatten_pair = [&](const PMat& p, const PMat& q) {
        Vec v;
        for (const auto& m : p.e) v.insert(v.end(), m.c.begin(), m.c.end());
        for (const auto& m : q.e) v.insert(v.end(), m.c.begin(), m.c.end());
        return v;
    };
    PMat id_src = PMat::identity(a.base, a.src), id_dst = PMat::identity(a.base, a.dst);
    Vec rhs_v = flatten_pair(id_src, id_dst);
    int rows = static_cast<int>(rhs_v.size());
    Mat A(C.field, rows, total);
    for (int j = 0; j < total; ++j) {
        Vec unit = vec_zero(C.field, total);
        unit[static_cast<size_t>(j)] = Scalar::one(C.field);
        PMat n = unflatten(unit);
        Vec col = flatten_pair(pmat_mul(n, a), pmat_mul(a, n));
        for (int i = 0; i < rows; ++i) A.at(i, j) = col[static_cast<size_t>(i)];
    }
    Mat rhs(C.field, rows, 1);
    for (int i = 0; i < rows; ++i) rhs.at(i, 0) = rhs_v[static_cast<size_t>(i)];
    LinSolve sol = solve_linear(A, rhs);
    if (!sol.ok) return std::nullopt;
    return unflatten(sol.particular.col(0));
}

PMat pmat_map(const KFunctor& f, const PMat& a) {
    PMat r;
    r.base = f.dst;
    for (int x : a.src) r.src.push_back(f.fobj(x));
    for (int x : a.dst) r.dst.push_back(f.fobj(x));
    for (const auto& m : a.e) r.e.push_back(f.apply(m));
    return r;
}

/* ---- ProjComplex ---- */

std::vector<int> ProjComplex::term(int n) const {
    if (n < lo || n > hi()) return {};
    return terms[static_cast<size_t>(n - lo)];
}

PMat ProjComplex::d(int n) const {
    if (n >= lo && n < hi()) return diff[static_cast<size_t>(n - lo)];
    return PMat::zero(base, term(n), term(n + 1));
}

int ProjComplex::total_summands() const {
    int s = 0;
    for (const auto& t : terms) s += static_cast<int>(t.size());
    return s;
}

int ProjComplex::total_dim() const {
    int s = 0;
    for (const auto& t : terms)
        for (int x : t)
            for (int y = 0; y < base->n(); ++y) s += base->dim(y, x);
    return s;
}

void ProjComplex::validate() const {
    if (terms.empty()) return;
    if (diff.size() + 1 != terms.size() && !(diff.empty() && terms.size() == 1))
        throw Error("ShapeMismatch", "differential count does not match terms");
    for (size_t k = 0; k < diff.size(); ++k)
        if (diff[k].src != terms[k] || diff[k].dst != terms[k + 1])
            throw Error("ShapeMismatch", "differential endpoints do not match terms");
    for (size_t k = 0; k + 1 < diff.size(); ++k)
        if (!pmat_is_zero(pmat_mul(diff[k + 1], diff[k])))
            throw Error("BadArgument", "d∘d != 0 at degree " + std::to_string(lo + static_cast<int>(k)));
}

std::string ProjComplex::key() const {
    std::ostringstream os;
    os << "lo" << lo;
    for (size_t k = 0; k < terms.size(); ++k) {
        os << "|";
        for (int x : terms[k]) os << base->objects[static_cast<size_t>(x)] << ",";
        if (k < diff.size()) {
            os << ";";
            for (const auto& m : diff[k].e) {
                for (const auto& s : m.c) os << s.str() << ".";
                os << "/";
            }
        }
    }
    return os.str();
}

ProjComplex stalk_complex(const CatPtr& base, int obj, int degree) {
    ProjComplex u;
    u.base = base;
    u.lo = degree;
    u.terms = {{obj}};
    return u;
}

ProjComplex make_complex(const CatPtr& base, int lo, std::vector<std::vector<int>> terms,
                         std::vector<PMat> diffs) {
    ProjComplex u;
    u.base = base;
    u.lo = lo;
    u.terms = std::move(terms);
    u.diff = std::move(diffs);
    u.validate();
    return u;
}

ProjComplex shift_complex(const ProjComplex& u, int n) {
    ProjComplex r = u;
    r.lo = u.lo - n;
    if (n % 2 != 0)
        for (auto& d : r.diff) d = pmat_scale(Scalar::of_int(u.base->field, -1), d);
    return r;
}

ProjComplex direct_sum(const ProjComplex& u, const ProjComplex& v) {
    if (u.empty()) return v;
    if (v.empty()) return u;
    ProjComplex r;
    r.base = u.base;
    r.lo = std::min(u.lo, v.lo);
    int hi = std::max(u.hi(), v.hi());
    for (int nn = r.lo; nn <= hi; ++nn) {
        std::vector<int> t = u.term(nn);
        auto tv = v.term(nn);
        t.insert(t.end(), tv.begin(), tv.end());
        r.terms.push_back(std::move(t));
    }
    for (int nn = r.lo; nn < hi; ++nn) {
        PMat du = u.d(nn), dv = v.d(nn);
        PMat d = PMat::zero(r.base, r.terms[static_cast<size_t>(nn - r.lo)],
                            r.terms[static_cast<size_t>(nn + 1 - r.lo)]);
        size_t usrc = u.term(nn).size(), udst = u.term(nn + 1).size();
        for (size_t i = 0; i < du.dst.size(); ++i)
            for (size_t j = 0; j < du.src.size(); ++j) d.at(i, j) = du.at(i, j);
        for (size_t i = 0; i < dv.dst.size(); ++i)
            for (size_t j = 0; j < dv.src.size(); ++j) d.at(udst + i, usrc + j) = dv.at(i, j);
        r.diff.push_back(std::move(d));
    }
    return r;
}

ProjComplex trim(const ProjComplex& u) {
    int first = 0, last = static_cast<int>(u.terms.size()) - 1;
    while (first <= last && u.terms[static_cast<size_t>(first)].empty()) ++first;
    while (last >= first && u.terms[static_cast<size_t>(last)].empty()) --last;
    ProjComplex r;
    r.base = u.base;
    if (first > last) {
        r.lo = 0;
        return r;
    }
    r.lo = u.lo + first;
    for (int k = first; k <= last; ++k) r.terms.push_back(u.terms[static_cast<size_t>(k)]);
    for (int k = first; k < last; ++k) r.diff.push_back(u.diff[static_cast<size_t>(k)]);
    return r;
}

ProjComplex map_complex(const KFunctor& f, const ProjComplex& u) {
    ProjComplex r;
    r.base = f.dst;
    r.lo = u.lo;
    for (const auto& t : u.terms) {
        std::vector<int> nt;
        for (int x : t) nt.push_back(f.fobj(x));
        r.terms.push_back(std::move(nt));
    }
    for (const auto& d : u.diff) r.diff.push_back(pmat_map(f, d));
    return r;
}

bool complex_eq(const ProjComplex& u, const ProjComplex& v) {
    if (u.base.get() != v.base.get() || u.lo != v.lo || u.terms != v.terms) return false;
    for (size_t k = 0; k < u.diff.size(); ++k)
        if (!pmat_eq(u.diff[k], v.diff[k])) return false;
    return true;
}

/* ---- chain maps ---- */

PMat ChainMap::at_degree(int n) const {
    if (n >= src.lo && n <= src.hi()) return comp[static_cast<size_t>(n - src.lo)];
    return PMat::zero(src.base, src.term(n), dst.term(n));
}

ChainMap zero_chain_map(const ProjComplex& u, const ProjComplex& w) {
    if (u.base.get() != w.base.get()) throw Error("BaseMismatch", "chain map across bases");
    ChainMap f;
    f.src = u;
    f.dst = w;
    for (int n = u.lo; n <= u.hi(); ++n) f.comp.push_back(PMat::zero(u.base, u.term(n), w.term(n)));
    return f;
}

ChainMap identity_chain_map(const ProjComplex& u) {
    ChainMap f;
    f.src = u;
    f.dst = u;
    for (int n = u.lo; n <= u.hi(); ++n) f.comp.push_back(PMat::identity(u.base, u.term(n)));
    return f;
}

bool is_chain_map(const ChainMap& f) {
    int lo = std::min(f.src.lo, f.dst.lo) - 1, hi = std::max(f.src.hi(), f.dst.hi());
    for (int n = lo; n <= hi; ++n) {
        PMat lhs = pmat_mul(f.dst.d(n), f.at_degree(n));
        PMat rhs = pmat_mul(f.at_degree(n + 1), f.src.d(n));
        if (!pmat_eq(lhs, rhs)) return false;
    }
    return true;
}

ChainMap compose_chain_maps(const ChainMap& g, const ChainMap& f) {
    ChainMap r;
    r.src = f.src;
    r.dst = g.dst;
    for (int n = f.src.lo; n <= f.src.hi(); ++n)
        r.comp.push_back(pmat_mul(g.at_degree(n), f.at_degree(n)));
    if (f.src.empty()) r.comp.clear();
    return r;
}

ChainMap chain_add(const ChainMap& a, const ChainMap& b) {
    ChainMap r = a;
    for (size_t k = 0; k < r.comp.size(); ++k) r.comp[k] = pmat_add(r.comp[k], b.comp[k]);
    return r;
}

ChainMap chain_scale(const Scalar& s, const ChainMap& a) {
    ChainMap r = a;
    for (auto& p : r.comp) p = pmat_scale(s, p);
    return r;
}

ChainMap chain_sub(const ChainMap& a, const ChainMap& b) {
    return chain_add(a, chain_scale(Scalar::of_int(a.src.base->field, -1), b));
}

ChainMap map_chain_map(const KFunctor& fun, const ChainMap& m) {
    ChainMap r;
    r.src = map_complex(fun, m.src);
    r.dst = map_complex(fun, m.dst);
    for (const auto& p : m.comp) r.comp.push_back(pmat_map(fun, p));
    return r;
}

ChainMap shift_chain_map(const ChainMap& f, int n) {
    ChainMap r;
    r.src = shift_complex(f.src, n);
    r.dst = shift_complex(f.dst, n);
    r.comp = f.comp;
    return r;
}

bool chain_map_eq(const ChainMap& a, const ChainMap& b) {
    int lo = std::min(a.src.lo, b.src.lo), hi = std::max(a.src.hi(), b.src.hi());
    for (int n = lo; n <= hi; ++n)
        if (!pmat_eq(a.at_degree(n), b.at_degree(n))) return false;
    return true;
}

/* ---- entry coordinate systems for map families ---- */

namespace {

// family of components U^n -> W^{n+s}
struct FamilySpace {
    const ProjComplex* u;
    const ProjComplex* w;
    int s;
    struct Slot {
        int n;
        size_t r, c;
        int off, dim;
    };
    std::vector<Slot> slots;
    int total = 0;

    FamilySpace(const ProjComplex& uu, const ProjComplex& ww, int shift) : u(&uu), w(&ww), s(shift) {
        for (int n = u->lo; n <= u->hi(); ++n) {
            auto src = u->term(n);
            auto dst = w->term(n + s);
            for (size_t r = 0; r < dst.size(); ++r)
                for (size_t c = 0; c < src.size(); ++c) {
                    int d = u->base->dim(src[c], dst[r]);
                    if (d == 0) continue;
                    slots.push_back({n, r, c, total, d});
                    total += d;
                }
        }
    }

    std::vector<PMat> zero_family() const {
        std::vector<PMat> f;
        for (int n = u->lo; n <= u->hi(); ++n) f.push_back(PMat::zero(u->base, u->term(n), w->term(n + s)));
        return f;
    }

    Vec flatten(const std::vector<PMat>& f) const {
        Vec v = vec_zero(u->base->field, total);
        for (const auto& sl : slots) {
            const Mor& m = f[static_cast<size_t>(sl.n - u->lo)].at(sl.r, sl.c);
            for (int k = 0; k < sl.dim; ++k) v[static_cast<size_t>(sl.off + k)] = m.c[static_cast<size_t>(k)];
        }
        return v;
    }

    std::vector<PMat> unflatten(const Vec& v) const {
        auto f = zero_family();
        for (const auto& sl : slots)
            for (int k = 0; k < sl.dim; ++k)
                f[static_cast<size_t>(sl.n - u->lo)].at(sl.r, sl.c).c[static_cast<size_t>(k)] =
                    v[static_cast<size_t>(sl.off + k)];
        return f;
    }
};

// chain condition residual d_W∘f - f∘d_U, one degree up
std::vector<PMat> chain_residual(const FamilySpace& fs, const std::vector<PMat>& f) {
    const ProjComplex& U = *fs.u;
    const ProjComplex& W = *fs.w;
    std::vector<PMat> out;
    auto at = [&](int n) -> PMat {
        if (n >= U.lo && n <= U.hi()) return f[static_cast<size_t>(n - U.lo)];
        return PMat::zero(U.base, U.term(n), W.term(n + fs.s));
    };
    for (int n = U.lo; n <= U.hi(); ++n) {
        PMat a = pmat_mul(W.d(n + fs.s), at(n));
        PMat b = pmat_mul(at(n + 1), U.d(n));
        out.push_back(pmat_add(a, pmat_scale(Scalar::of_int(U.base->field, -1), b)));
    }
    return out;
}

// boundary of a homotopy family (s = -1): d_W∘h + h∘d_U
std::vector<PMat> homotopy_boundary(const FamilySpace& hs, const std::vector<PMat>& h) {
    const ProjComplex& U = *hs.u;
    const ProjComplex& W = *hs.w;
    std::vector<PMat> out;
    auto at = [&](int n) -> PMat {
        if (n >= U.lo && n <= U.hi()) return h[static_cast<size_t>(n - U.lo)];
        return PMat::zero(U.base, U.term(n), W.term(n - 1));
    };
    for (int n = U.lo; n <= U.hi(); ++n)
        out.push_back(pmat_add(pmat_mul(W.d(n - 1), at(n)), pmat_mul(at(n + 1), U.d(n))));
    return out;
}

}  // namespace

bool null_homotopic(const ChainMap& f) {
    if (f.src.empty()) return true;
    FamilySpace map_space(f.src, f.dst, 0);
    FamilySpace h_space(f.src, f.dst, -1);
    Vec target = map_space.flatten(f.comp);
    if (vec_is_zero(target)) return true;
    const FieldSpec& fs = f.src.base->field;
    Mat B(fs, map_space.total, h_space.total);
    for (int j = 0; j < h_space.total; ++j) {
        Vec unit = vec_zero(fs, h_space.total);
        unit[static_cast<size_t>(j)] = Scalar::one(fs);
        Vec col = map_space.flatten(homotopy_boundary(h_space, h_space.unflatten(unit)));
        for (int i = 0; i < map_space.total; ++i) B.at(i, j) = col[static_cast<size_t>(i)];
    }
    Mat rhs(fs, map_space.total, 1);
    for (int i = 0; i < map_space.total; ++i) rhs.at(i, 0) = target[static_cast<size_t>(i)];
    return solve_linear(B, rhs).ok;
}

HomBasis hom_k(const ProjComplex& u, const ProjComplex& v, int n) {
    if (u.base.get() != v.base.get()) throw Error("BaseMismatch", "hom_k across bases");
    HomBasis hb;
    hb.u = u;
    hb.w = shift_complex(v, n);
    hb.n = n;
    const FieldSpec& fs = u.base->field;

    if (u.empty() || hb.w.empty()) {
        hb.cycle_rows = Mat(fs, 0, 0);
        hb.boundary_rows = Mat(fs, 0, 0);
        hb.rep_rows = Mat(fs, 0, 0);
        return hb;
    }
    FamilySpace map_space(hb.u, hb.w, 0);
    if (map_space.total == 0) {
        hb.cycle_rows = Mat(fs, 0, 0);
        hb.boundary_rows = Mat(fs, 0, 0);
        hb.rep_rows = Mat(fs, 0, 0);
        return hb;  // no degree overlap: zero space without solving
    }
    FamilySpace res_space(hb.u, hb.w, 1);
    FamilySpace h_space(hb.u, hb.w, -1);

    // chain-map condition kernel
    Mat K(fs, res_space.total, map_space.total);
    for (int j = 0; j < map_space.total; ++j) {
        Vec unit = vec_zero(fs, map_space.total);
        unit[static_cast<size_t>(j)] = Scalar::one(fs);
        Vec col = res_space.flatten(chain_residual(map_space, map_space.unflatten(unit)));
        for (int i = 0; i < res_space.total; ++i) K.at(i, j) = col[static_cast<size_t>(i)];
    }
    hb.cycle_rows = nullspace(K);

    // boundary image
    std::vector<Vec> brows;
    for (int j = 0; j < h_space.total; ++j) {
        Vec unit = vec_zero(fs, h_space.total);
        unit[static_cast<size_t>(j)] = Scalar::one(fs);
        Vec row = map_space.flatten(homotopy_boundary(h_space, h_space.unflatten(unit)));
        if (!vec_is_zero(row)) brows.push_back(std::move(row));
    }
    if (brows.empty())
        hb.boundary_rows = Mat(fs, 0, map_space.total);
    else {
        Rref rr = rref(Mat::from_rows(fs, brows));
        hb.boundary_rows = Mat(fs, rr.rank, map_space.total);
        for (int i = 0; i < rr.rank; ++i)
            for (int j = 0; j < map_space.total; ++j) hb.boundary_rows.at(i, j) = rr.m.at(i, j);
    }

    // quotient representatives: cycles reduced modulo boundaries, echelonized
    std::vector<int> bpivots;
    for (int i = 0; i < hb.boundary_rows.rows; ++i)
        for (int j = 0; j < map_space.total; ++j)
            if (!hb.boundary_rows.at(i, j).is_zero()) {
                bpivots.push_back(j);
                break;
            }
    std::vector<Vec> reduced;
    for (int i = 0; i < hb.cycle_rows.rows; ++i) {
        Vec row = hb.cycle_rows.row(i);
        for (int b = 0; b < hb.boundary_rows.rows; ++b) {
            Scalar c = row[static_cast<size_t>(bpivots[static_cast<size_t>(b)])];
            if (!c.is_zero())
                for (int j = 0; j < map_space.total; ++j)
                    row[static_cast<size_t>(j)] = row[static_cast<size_t>(j)] - c * hb.boundary_rows.at(b, j);
        }
        if (!vec_is_zero(row)) reduced.push_back(std::move(row));
    }
    if (reduced.empty())
        hb.rep_rows = Mat(fs, 0, map_space.total);
    else {
        Rref rr = rref(Mat::from_rows(fs, reduced));
        hb.rep_rows = Mat(fs, rr.rank, map_space.total);
        for (int i = 0; i < rr.rank; ++i)
            for (int j = 0; j < map_space.total; ++j) hb.rep_rows.at(i, j) = rr.m.at(i, j);
    }
    for (int i = 0; i < hb.rep_rows.rows; ++i) {
        ChainMap cm;
        cm.src = hb.u;
        cm.dst = hb.w;
        cm.comp = map_space.unflatten(hb.rep_rows.row(i));
        hb.basis.push_back(std::move(cm));
    }
    return hb;
}

Vec HomBasis::coords_of(const ChainMap& f) const {
    const FieldSpec& fs = u.base->field;
    if (rep_rows.rows == 0) {
        ChainMap z = zero_chain_map(u, w);
        if (!null_homotopic(f)) throw Error("BadArgument", "coords_of: nonzero class in a zero Hom space");
        (void)z;
        return vec_zero(fs, 0);
    }
    FamilySpace map_space(u, w, 0);
    Vec target = map_space.flatten(f.comp);
    int cols = rep_rows.rows + boundary_rows.rows;
    Mat A(fs, map_space.total, cols);
    for (int j = 0; j < rep_rows.rows; ++j)
        for (int i = 0; i < map_space.total; ++i) A.at(i, j) = rep_rows.at(j, i);
    for (int j = 0; j < boundary_rows.rows; ++j)
        for (int i = 0; i < map_space.total; ++i) A.at(i, rep_rows.rows + j) = boundary_rows.at(j, i);
    Mat rhs(fs, map_space.total, 1);
    for (int i = 0; i < map_space.total; ++i) rhs.at(i, 0) = target[static_cast<size_t>(i)];
    LinSolve sol = solve_linear(A, rhs);
    if (!sol.ok) throw Error("BadArgument", "coords_of: morphism is not a chain map class");
    Vec out = vec_zero(fs, rep_rows.rows);
    for (int j = 0; j < rep_rows.rows; ++j) out[static_cast<size_t>(j)] = sol.particular.at(j, 0);
    return out;
}

ChainMap HomBasis::from_coords(const Vec& coords) const {
    ChainMap f = zero_chain_map(u, w);
    for (size_t i = 0; i < coords.size(); ++i)
        if (!coords[i].is_zero()) f = chain_add(f, chain_scale(coords[i], basis[i]));
    return f;
}

/* ---- cone ---- */

ConeData cone_with_maps(const ChainMap& f) {
    const ProjComplex& U = f.src;
    const ProjComplex& V = f.dst;
    const CatPtr& base = U.base;
    const FieldSpec& fs = base->field;
    ProjComplex c;
    c.base = base;
    if (U.empty() && V.empty()) {
        ConeData cd{c, zero_chain_map(V, c), zero_chain_map(c, shift_complex(U, 1))};
        return cd;
    }
    int lo = U.empty() ? V.lo : (V.empty() ? U.lo - 1 : std::min(U.lo - 1, V.lo));
    int hi = U.empty() ? V.hi() : (V.empty() ? U.hi() - 1 : std::max(U.hi() - 1, V.hi()));
    c.lo = lo;
    for (int n = lo; n <= hi; ++n) {
        std::vector<int> t = U.term(n + 1);
        auto tv = V.term(n);
        t.insert(t.end(), tv.begin(), tv.end());
        c.terms.push_back(std::move(t));
    }
    for (int n = lo; n < hi; ++n) {
        PMat du = U.d(n + 1), dv = V.d(n);
        PMat fc = f.at_degree(n + 1);
        size_t usrc = U.term(n + 1).size(), udst = U.term(n + 2).size();
        PMat d = PMat::zero(base, c.terms[static_cast<size_t>(n - lo)], c.terms[static_cast<size_t>(n + 1 - lo)]);
        for (size_t i = 0; i < du.dst.size(); ++i)
            for (size_t j = 0; j < du.src.size(); ++j) d.at(i, j) = mor_scale(Scalar::of_int(fs, -1), du.at(i, j));
        for (size_t i = 0; i < fc.dst.size(); ++i)
            for (size_t j = 0; j < fc.src.size(); ++j) d.at(udst + i, j) = fc.at(i, j);
        for (size_t i = 0; i < dv.dst.size(); ++i)
            for (size_t j = 0; j < dv.src.size(); ++j) d.at(udst + i, usrc + j) = dv.at(i, j);
        c.diff.push_back(std::move(d));
    }
    c.validate();

    ConeData cd;
    cd.c = c;
    cd.incl = zero_chain_map(V, c);
    for (int n = V.lo; n <= V.hi(); ++n) {
        PMat& p = cd.incl.comp[static_cast<size_t>(n - V.lo)];
        size_t uoff = U.term(n + 1).size();
        for (size_t i = 0; i < V.term(n).size(); ++i) p.at(uoff + i, i) = base->id_mor(V.term(n)[i]);
    }
    ProjComplex u1 = shift_complex(U, 1);
    cd.proj = zero_chain_map(c, u1);
    for (int n = c.lo; n <= c.hi(); ++n) {
        PMat& p = cd.proj.comp[static_cast<size_t>(n - c.lo)];
        for (size_t i = 0; i < U.term(n + 1).size(); ++i) p.at(i, i) = base->id_mor(U.term(n + 1)[i]);
    }
    return cd;
}

ProjComplex cone(const ChainMap& f) { return cone_with_maps(f).c; }

/* ---- basic-local registry ---- */

namespace {
std::mutex bl_mutex;
std::set<const FinKCat*> bl_verified;
}  // namespace

void ensure_basic_local(const CatPtr& base) {
    {
        std::lock_guard<std::mutex> lock(bl_mutex);
        if (bl_verified.count(base.get())) return;
    }
    Report rep = check_basic_local(*base);
    if (!rep.pass) throw Error("NotBasicLocal", rep.str());
    std::lock_guard<std::mutex> lock(bl_mutex);
    bl_verified.insert(base.get());
}

/* ---- minimization ---- */

namespace {

// chain map realizing the window change u <-> trim(u)
ChainMap retrim_map(const ProjComplex& u, const ProjComplex& t, bool forward) {
    if (forward) {
        ChainMap f = zero_chain_map(u, t);
        for (int n = u.lo; n <= u.hi(); ++n)
            if (n >= t.lo && n <= t.hi()) f.comp[static_cast<size_t>(n - u.lo)] = PMat::identity(u.base, u.term(n));
        return f;
    }
    ChainMap f = zero_chain_map(t, u);
    for (int n = t.lo; n <= t.hi(); ++n) f.comp[static_cast<size_t>(n - t.lo)] = PMat::identity(u.base, t.term(n));
    return f;
}

}  // namespace

MinimizeResult minimize(const ProjComplex& u) {
    ensure_basic_local(u.base);
    const CatPtr& base = u.base;
    const FinKCat& C = *base;
    ProjComplex cur = u;
    ChainMap p = identity_chain_map(u), q = identity_chain_map(u);

    for (;;) {
        int fk = -1;
        size_t fr = 0, fc = 0;
        Mor uinv;
        for (size_t k = 0; k < cur.diff.size() && fk < 0; ++k) {
            const PMat& d = cur.diff[k];
            for (size_t r = 0; r < d.dst.size() && fk < 0; ++r)
                for (size_t c = 0; c < d.src.size() && fk < 0; ++c) {
                    if (d.src[c] != d.dst[r] || mor_is_zero(d.at(r, c))) continue;
                    auto inv = mor_two_sided_inverse(C, d.at(r, c));
                    if (inv) {
                        fk = static_cast<int>(k);
                        fr = r;
                        fc = c;
                        uinv = *inv;
                    }
                }
        }
        if (fk < 0) break;

        const PMat d = cur.diff[static_cast<size_t>(fk)];
        PMat T = PMat::identity(base, d.dst);
        PMat Tinv = PMat::identity(base, d.dst);
        for (size_t s = 0; s < d.dst.size(); ++s) {
            if (s == fr || mor_is_zero(d.at(s, fc))) continue;
            Mor e = C.compose(d.at(s, fc), uinv);
            T.at(s, fr) = mor_scale(Scalar::of_int(C.field, -1), e);
            Tinv.at(s, fr) = e;
        }
        PMat S = PMat::identity(base, d.src);
        PMat Sinv = PMat::identity(base, d.src);
        for (size_t m2 = 0; m2 < d.src.size(); ++m2) {
            if (m2 == fc || mor_is_zero(d.at(fr, m2))) continue;
            Mor e = C.compose(uinv, d.at(fr, m2));
            S.at(fc, m2) = e;
            Sinv.at(fc, m2) = mor_scale(Scalar::of_int(C.field, -1), e);
        }
        ProjComplex nxt = cur;
        nxt.diff[static_cast<size_t>(fk)] = pmat_mul(T, pmat_mul(d, Sinv));
        if (static_cast<size_t>(fk) + 1 < cur.diff.size())
            nxt.diff[static_cast<size_t>(fk) + 1] = pmat_mul(cur.diff[static_cast<size_t>(fk) + 1], Tinv);
        if (fk > 0) nxt.diff[static_cast<size_t>(fk) - 1] = pmat_mul(S, cur.diff[static_cast<size_t>(fk) - 1]);

        ChainMap phi = identity_chain_map(cur);
        phi.dst = nxt;
        phi.comp[static_cast<size_t>(fk)] = S;
        phi.comp[static_cast<size_t>(fk) + 1] = T;
        ChainMap phi_inv = identity_chain_map(nxt);
        phi_inv.dst = cur;
        phi_inv.comp[static_cast<size_t>(fk)] = Sinv;
        phi_inv.comp[static_cast<size_t>(fk) + 1] = Tinv;

        ProjComplex dropped;
        dropped.base = base;
        dropped.lo = nxt.lo;
        dropped.terms = nxt.terms;
        auto& t0 = dropped.terms[static_cast<size_t>(fk)];
        t0.erase(t0.begin() + static_cast<long>(fc));
        auto& t1 = dropped.terms[static_cast<size_t>(fk) + 1];
        t1.erase(t1.begin() + static_cast<long>(fr));
        dropped.diff = nxt.diff;
        auto drop_col = [](PMat& m, size_t col) {
            PMat r;
            r.base = m.base;
            r.src = m.src;
            r.src.erase(r.src.begin() + static_cast<long>(col));
            r.dst = m.dst;
            for (size_t i = 0; i < m.dst.size(); ++i)
                for (size_t j = 0; j < m.src.size(); ++j)
                    if (j != col) r.e.push_back(m.at(i, j));
            m = std::move(r);
        };
        auto drop_row = [](PMat& m, size_t row) {
            PMat r;
            r.base = m.base;
            r.src = m.src;
            r.dst = m.dst;
            r.dst.erase(r.dst.begin() + static_cast<long>(row));
            for (size_t i = 0; i < m.dst.size(); ++i) {
                if (i == row) continue;
                for (size_t j = 0; j < m.src.size(); ++j) r.e.push_back(m.at(i, j));
            }
            m = std::move(r);
        };
        {
            drop_col(dropped.diff[static_cast<size_t>(fk)], fc);
            drop_row(dropped.diff[static_cast<size_t>(fk)], fr);
            if (static_cast<size_t>(fk) + 1 < dropped.diff.size())
                drop_col(dropped.diff[static_cast<size_t>(fk) + 1], fr);
            if (fk > 0) drop_row(dropped.diff[static_cast<size_t>(fk) - 1], fc);
        }

        ChainMap pi = zero_chain_map(nxt, dropped), io = zero_chain_map(dropped, nxt);
        for (int n = nxt.lo; n <= nxt.hi(); ++n) {
            const auto& full = nxt.term(n);
            const auto& kept = dropped.term(n);
            PMat& pj = pi.comp[static_cast<size_t>(n - nxt.lo)];
            PMat& in = io.comp[static_cast<size_t>(n - dropped.lo)];
            size_t skip = full.size() + 1;
            if (n - nxt.lo == fk) skip = fc;
            if (n - nxt.lo == fk + 1) skip = fr;
            size_t kc = 0;
            for (size_t j = 0; j < full.size(); ++j) {
                if (j == skip) continue;
                pj.at(kc, j) = base->id_mor(full[j]);
                in.at(j, kc) = base->id_mor(kept[kc]);
                ++kc;
            }
        }

        p = compose_chain_maps(pi, compose_chain_maps(phi, p));
        q = compose_chain_maps(q, compose_chain_maps(phi_inv, io));
        cur = std::move(dropped);
    }

    ProjComplex tr = trim(cur);
    MinimizeResult res;
    res.m = tr;
    res.to_min = compose_chain_maps(retrim_map(cur, tr, true), p);
    res.from_min = compose_chain_maps(q, retrim_map(cur, tr, false));
    return res;
}

/* ---- homotopy equivalence ---- */

HomotopyDecision homotopy_equivalent(const ProjComplex& u, const ProjComplex& v, std::uint64_t seed) {
    HomotopyDecision dec;
    MinimizeResult mu = minimize(u), mv = minimize(v);
    if (mu.m.empty() && mv.m.empty()) {
        dec.equivalent = true;
        dec.fwd = zero_chain_map(u, v);
        dec.bwd = zero_chain_map(v, u);
        return dec;
    }
    auto sorted_terms = [](const ProjComplex& c) {
        auto t = c.terms;
        for (auto& d : t) std::sort(d.begin(), d.end());
        return std::make_pair(c.lo, t);
    };
    if (mu.m.empty() != mv.m.empty() || sorted_terms(mu.m) != sorted_terms(mv.m)) return dec;

    HomBasis hb = hom_k(mu.m, mv.m, 0);
    FamilySpace map_space(mu.m, mv.m, 0);
    const Mat& cyc = hb.cycle_rows;
    int D = cyc.rows;
    const FieldSpec& fs = u.base->field;

    auto try_coords = [&](const Vec& coef) -> bool {
        Vec flat = vec_zero(fs, map_space.total);
        for (int i = 0; i < D; ++i)
            if (!coef[static_cast<size_t>(i)].is_zero())
                for (int j = 0; j < map_space.total; ++j)
                    flat[static_cast<size_t>(j)] =
                        flat[static_cast<size_t>(j)] + coef[static_cast<size_t>(i)] * cyc.at(i, j);
        ChainMap f;
        f.src = mu.m;
        f.dst = mv.m;
        f.comp = map_space.unflatten(flat);
        ChainMap g = zero_chain_map(mv.m, mu.m);
        for (int n = mu.m.lo; n <= mu.m.hi(); ++n) {
            auto inv = pmat_inverse(f.at_degree(n));
            if (!inv) return false;
            g.comp[static_cast<size_t>(n - mv.m.lo)] = *inv;
        }
        if (!is_chain_map(f) || !is_chain_map(g)) return false;
        dec.equivalent = true;
        dec.fwd = compose_chain_maps(mv.from_min, compose_chain_maps(f, mu.to_min));
        dec.bwd = compose_chain_maps(mu.from_min, compose_chain_maps(g, mv.to_min));
        return true;
    };

    for (int i = 0; i < D; ++i)
        if (try_coords(vec_unit(fs, D, i))) return dec;
    if (D > 0) {
        Vec ones(static_cast<size_t>(D), Scalar::one(fs));
        if (try_coords(ones)) return dec;
    }
    bool exhaustive;
    if (!fs.is_rationals()) {
        double tot = 1;
        for (int i = 0; i < D; ++i) tot *= fs.p;
        exhaustive = tot <= 65536;
    } else {
        exhaustive = D <= 3;  // small rational grid
    }
    if (exhaustive) {
        long radix = fs.is_rationals() ? 5 : fs.p;
        long tot = 1;
        for (int i = 0; i < D; ++i) tot *= radix;
        for (long t = 0; t < tot; ++t) {
            long val = t;
            Vec coef = vec_zero(fs, D);
            for (int i = 0; i < D; ++i) {
                long digit = val % radix;
                val /= radix;
                coef[static_cast<size_t>(i)] =
                    fs.is_rationals() ? Scalar::of_int(fs, digit - 2) : Scalar::of_int(fs, digit);
            }
            if (try_coords(coef)) return dec;
        }
        dec.exhaustive = fs.is_rationals() ? false : true;  // a rational grid is still a heuristic
        return dec;
    }
    Rng rng(seed ^ 0x9e11u);
    for (int t = 0; t < 64; ++t) {
        Vec coef = vec_zero(fs, D);
        for (int i = 0; i < D; ++i) coef[static_cast<size_t>(i)] = rng.scalar(fs, -8, 8);
        if (try_coords(coef)) return dec;
    }
    dec.exhaustive = false;
    return dec;
}

/* ---- block split ---- */

BlockSplit split_blocks(const ProjComplex& u) {
    BlockSplit bs;
    ProjComplex t = trim(u);
    if (t.empty()) return bs;
    std::vector<std::pair<int, size_t>> nodes;
    std::map<std::pair<int, size_t>, int> id;
    for (int k = 0; k < static_cast<int>(t.terms.size()); ++k)
        for (size_t s = 0; s < t.terms[static_cast<size_t>(k)].size(); ++s) {
            id[{k, s}] = static_cast<int>(nodes.size());
            nodes.push_back({k, s});
        }
    std::vector<int> parent(nodes.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int a) {
        while (parent[static_cast<size_t>(a)] != a)
            a = parent[static_cast<size_t>(a)] = parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
        return a;
    };
    auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };
    for (int k = 0; k + 1 < static_cast<int>(t.terms.size()); ++k) {
        const PMat& d = t.diff[static_cast<size_t>(k)];
        for (size_t r = 0; r < d.dst.size(); ++r)
            for (size_t c = 0; c < d.src.size(); ++c)
                if (!mor_is_zero(d.at(r, c))) unite(id[{k, c}], id[{k + 1, r}]);
    }
    std::vector<int> roots;
    std::map<int, int> block_of_root;
    for (size_t i = 0; i < nodes.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (!block_of_root.count(r)) {
            block_of_root[r] = static_cast<int>(roots.size());
            roots.push_back(r);
        }
    }
    int nblocks = static_cast<int>(roots.size());
    for (int b = 0; b < nblocks; ++b) {
        ProjComplex blk;
        blk.base = t.base;
        blk.lo = t.lo;
        std::vector<std::vector<size_t>> keep(t.terms.size());
        for (size_t i = 0; i < nodes.size(); ++i)
            if (block_of_root[find(static_cast<int>(i))] == b)
                keep[static_cast<size_t>(nodes[i].first)].push_back(nodes[i].second);
        for (size_t k = 0; k < t.terms.size(); ++k) {
            std::vector<int> objs;
            for (size_t s : keep[k]) objs.push_back(t.terms[k][s]);
            blk.terms.push_back(std::move(objs));
        }
        for (size_t k = 0; k + 1 < t.terms.size(); ++k) {
            PMat d = PMat::zero(t.base, blk.terms[k], blk.terms[k + 1]);
            for (size_t r = 0; r < keep[k + 1].size(); ++r)
                for (size_t c = 0; c < keep[k].size(); ++c)
                    d.at(r, c) = t.diff[k].at(keep[k + 1][r], keep[k][c]);
            blk.diff.push_back(std::move(d));
        }
        ProjComplex blk_t = trim(blk);
        ChainMap incl = zero_chain_map(blk, t), proj = zero_chain_map(t, blk);
        for (size_t k = 0; k < t.terms.size(); ++k)
            for (size_t s = 0; s < keep[k].size(); ++s) {
                incl.comp[k].at(keep[k][s], s) = t.base->id_mor(blk.terms[k][s]);
                proj.comp[k].at(s, keep[k][s]) = t.base->id_mor(blk.terms[k][s]);
            }
        ChainMap tr_in = retrim_map(blk, blk_t, false);
        ChainMap tr_out = retrim_map(blk, blk_t, true);
        ChainMap u_in = retrim_map(u, t, true);
        ChainMap u_out = retrim_map(u, t, false);
        bs.blocks.push_back(blk_t);
        bs.incl.push_back(compose_chain_maps(u_out, compose_chain_maps(incl, tr_in)));
        bs.proj.push_back(compose_chain_maps(tr_out, compose_chain_maps(proj, u_in)));
    }
    return bs;
}

}  // namespace grcat
