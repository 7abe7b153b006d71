#ifndef GRCAT_TESTS_ORACLES_HPP
#define GRCAT_TESTS_ORACLES_HPP

// Independent oracles used to freeze expected values.  These deliberately
// avoid the solver paths they check: dimensions come from exhaustive
// enumeration, determinants from cofactor expansion.

#include <map>
#include <set>

#include "grcat/fixtures.hpp"

namespace oracle {

using namespace grcat;

// every path of the quiver up to the length bound, grouped by (src, dst)
inline std::map<std::pair<int, int>, std::vector<Path>> all_paths(const QuiverPresentation& p, int maxlen) {
    std::map<std::pair<int, int>, std::vector<Path>> out;
    std::vector<std::pair<Path, std::pair<int, int>>> frontier;
    for (int v = 0; v < static_cast<int>(p.vertices.size()); ++v) {
        out[{v, v}].push_back({});
        frontier.push_back({{}, {v, v}});
    }
    for (int len = 1; len <= maxlen; ++len) {
        std::vector<std::pair<Path, std::pair<int, int>>> next;
        for (const auto& [path, ends] : frontier)
            for (int a = 0; a < static_cast<int>(p.arrows.size()); ++a)
                if (p.arrows[static_cast<size_t>(a)].src == ends.second) {
                    Path ext = path;
                    ext.push_back(a);
                    auto ne = std::make_pair(ends.first, p.arrows[static_cast<size_t>(a)].dst);
                    out[ne].push_back(ext);
                    next.push_back({ext, ne});
                }
        if (next.empty()) break;
        frontier = std::move(next);
    }
    return out;
}

/* One-shot quotient dimension per Hom pair: all paths up to the bound, all
 * relation sandwiches at once, a single elimination per pair. */
inline std::map<std::pair<int, int>, int> path_algebra_dims(const QuiverPresentation& p,
                                                            const FieldSpec& fs, int maxlen) {
    auto paths = all_paths(p, maxlen);
    std::map<std::pair<int, int>, int> dims;
    for (int x = 0; x < static_cast<int>(p.vertices.size()); ++x)
        for (int y = 0; y < static_cast<int>(p.vertices.size()); ++y) {
            const auto& plist = paths[{x, y}];
            if (plist.empty()) {
                dims[{x, y}] = 0;
                continue;
            }
            std::map<Path, int> where;
            for (int i = 0; i < static_cast<int>(plist.size()); ++i) where[plist[static_cast<size_t>(i)]] = i;
            std::vector<Vec> gens;
            for (const auto& rel : p.relations) {
                int rs = p.arrows[static_cast<size_t>(rel[0].path.front())].src;
                int rd = p.arrows[static_cast<size_t>(rel[0].path.back())].dst;
                for (const auto& pre : paths[{x, rs}])
                    for (const auto& post : paths[{rd, y}]) {
                        Vec g = vec_zero(fs, static_cast<int>(plist.size()));
                        bool in_range = true;
                        for (const auto& t : rel) {
                            Path whole = pre;
                            whole.insert(whole.end(), t.path.begin(), t.path.end());
                            whole.insert(whole.end(), post.begin(), post.end());
                            auto it = where.find(whole);
                            if (it == where.end()) {
                                in_range = false;  // sandwich longer than the bound
                                break;
                            }
                            Scalar c = t.coeff.field() == fs ? t.coeff : Scalar::from_mpq(fs, t.coeff.rat());
                            g[static_cast<size_t>(it->second)] = g[static_cast<size_t>(it->second)] + c;
                        }
                        if (in_range && !vec_is_zero(g)) gens.push_back(std::move(g));
                    }
            }
            int r = gens.empty() ? 0 : rank(Mat::from_rows(fs, gens));
            dims[{x, y}] = static_cast<int>(plist.size()) - r;
        }
    return dims;
}

// morphism count of the free category on a quiver, by depth-first search
inline long free_category_size(const IndexQuiver& q) {
    long count = 0;
    auto dfs = [&](auto&& self, int v) -> void {
        ++count;
        for (const auto& a : q.arrows)
            if (a.src == v) self(self, a.dst);
    };
    for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v) dfs(dfs, v);
    return count;
}

// Hom dimension in K^b by exhaustive enumeration over a small prime field:
// count chain maps, count distinct null-homotopic boundaries, take logs
inline int hom_dim_f2_brute(const ProjComplex& u, const ProjComplex& v, int shift, int limit_bits = 20) {
    const FieldSpec& fs = u.base->field;
    if (fs.is_rationals() || fs.p != 2) throw Error("BadArgument", "oracle needs F2");
    ProjComplex w = shift_complex(v, shift);
    struct Slot {
        int n;
        size_t r, c;
        int k;
    };
    auto slots_of = [&](int s) {
        std::vector<Slot> slots;
        for (int n = u.lo; n <= u.hi(); ++n) {
            auto src = u.term(n);
            auto dst = w.term(n + s);
            for (size_t r = 0; r < dst.size(); ++r)
                for (size_t c = 0; c < src.size(); ++c)
                    for (int k = 0; k < u.base->dim(src[c], dst[r]); ++k) slots.push_back({n, r, c, k});
        }
        return slots;
    };
    auto family_of = [&](const std::vector<Slot>& slots, int s, std::uint64_t bits) {
        std::vector<PMat> f;
        for (int n = u.lo; n <= u.hi(); ++n) f.push_back(PMat::zero(u.base, u.term(n), w.term(n + s)));
        for (size_t i = 0; i < slots.size(); ++i)
            if (bits >> i & 1) {
                const Slot& sl = slots[i];
                f[static_cast<size_t>(sl.n - u.lo)].at(sl.r, sl.c).c[static_cast<size_t>(sl.k)] =
                    Scalar::one(fs);
            }
        return f;
    };
    auto map_slots = slots_of(0);
    auto h_slots = slots_of(-1);
    if (static_cast<int>(map_slots.size()) > limit_bits || static_cast<int>(h_slots.size()) > limit_bits)
        throw Error("BadArgument", "oracle enumeration too large");

    long chain_count = 0;
    for (std::uint64_t bits = 0; bits < (1ULL << map_slots.size()); ++bits) {
        ChainMap f;
        f.src = u;
        f.dst = w;
        f.comp = family_of(map_slots, 0, bits);
        if (is_chain_map(f)) ++chain_count;
    }
    std::set<std::vector<std::uint8_t>> boundaries;
    for (std::uint64_t bits = 0; bits < (1ULL << h_slots.size()); ++bits) {
        auto h = family_of(h_slots, -1, bits);
        // boundary d_W h + h d_U, flattened over the map slots
        std::vector<std::uint8_t> flat;
        for (int n = u.lo; n <= u.hi(); ++n) {
            PMat hn = n >= u.lo && n <= u.hi() ? h[static_cast<size_t>(n - u.lo)]
                                               : PMat::zero(u.base, u.term(n), w.term(n - 1));
            PMat hn1 = n + 1 >= u.lo && n + 1 <= u.hi() ? h[static_cast<size_t>(n + 1 - u.lo)]
                                                        : PMat::zero(u.base, u.term(n + 1), w.term(n));
            PMat b = pmat_add(pmat_mul(w.d(n - 1), hn), pmat_mul(hn1, u.d(n)));
            for (const auto& m : b.e)
                for (const auto& s : m.c) flat.push_back(s.is_zero() ? 0 : 1);
        }
        boundaries.insert(std::move(flat));
    }
    int dim_cycles = 0, dim_bound = 0;
    while ((1L << dim_cycles) < chain_count) ++dim_cycles;
    while ((1ULL << dim_bound) < boundaries.size()) ++dim_bound;
    if ((1L << dim_cycles) != chain_count || (1ULL << dim_bound) != boundaries.size())
        throw Error("Internal", "oracle counts are not powers of two");
    return dim_cycles - dim_bound;
}

// determinant by cofactor expansion
inline long cofactor_det(const std::vector<std::vector<long>>& m) {
    size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    long det = 0;
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<long>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<long> row;
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        det += (j % 2 == 0 ? 1 : -1) * m[0][j] * cofactor_det(minor);
    }
    return det;
}

// total dimension of Gr(X) by direct counting over the defining Hom sum
inline int gr_dim_count(const ColaxFunctor& x) {
    int total = 0;
    const IndexCat& I = x.index;
    for (int i = 0; i < I.n_obj(); ++i)
        for (int j = 0; j < I.n_obj(); ++j)
            for (int a : I.hom(i, j))
                for (int xo = 0; xo < x.fiber[static_cast<size_t>(i)]->n(); ++xo)
                    for (int yo = 0; yo < x.fiber[static_cast<size_t>(j)]->n(); ++yo)
                        total += x.fiber[static_cast<size_t>(j)]->dim(x.at(a).fobj(xo), yo);
    return total;
}

}  // namespace oracle

#endif
