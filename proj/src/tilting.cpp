#include "grcat/tilting.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "grcat/par.hpp"
#include "grcat/rng.hpp"

namespace grcat {

int TiltingSubcategoryData::find(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

Report check_presilting(const TiltingSubcategoryData& t) {
    Report rep;
    int n = static_cast<int>(t.objects.size());
    // canonical pair order independent of the input listing
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return t.objects[static_cast<size_t>(a)].key() < t.objects[static_cast<size_t>(b)].key(); });

    struct Task {
        int u, v, shift;
    };
    std::vector<Task> tasks;
    for (int a : order)
        for (int b : order) {
            const ProjComplex& U = t.objects[static_cast<size_t>(a)];
            const ProjComplex& V = t.objects[static_cast<size_t>(b)];
            if (U.empty() || V.empty()) continue;
            for (int p = V.lo - U.hi(); p <= V.hi() - U.lo; ++p)
                if (p != 0) tasks.push_back({a, b, p});
        }
    std::vector<int> dims(tasks.size(), 0);
    par::for_n(static_cast<std::ptrdiff_t>(tasks.size()), [&](std::ptrdiff_t k) {
        const Task& tk = tasks[static_cast<size_t>(k)];
        dims[static_cast<size_t>(k)] =
            hom_k(t.objects[static_cast<size_t>(tk.u)], t.objects[static_cast<size_t>(tk.v)], tk.shift).dim();
    });
    for (size_t k = 0; k < tasks.size(); ++k)
        if (dims[k] != 0)
            rep.fail("Hom_K(" + t.names[static_cast<size_t>(tasks[k].u)] + ", " +
                     t.names[static_cast<size_t>(tasks[k].v)] + "[" + std::to_string(tasks[k].shift) +
                     "]) has dimension " + std::to_string(dims[k]));
    return rep;
}

namespace {

mpq_class det_q(std::vector<std::vector<mpq_class>> m) {
    size_t n = m.size();
    mpq_class det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t sel = c;
        while (sel < n && m[sel][c] == 0) ++sel;
        if (sel == n) return mpq_class(0);
        if (sel != c) {
            std::swap(m[sel], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            mpq_class f = m[r][c] / m[c][c];
            for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

}  // namespace

K0Result k0_matrix(const TiltingSubcategoryData& t) {
    K0Result res;
    int nt = static_cast<int>(t.objects.size());
    int np = t.base->n();
    res.m.assign(static_cast<size_t>(nt), std::vector<long>(static_cast<size_t>(np), 0));
    for (int j = 0; j < nt; ++j) {
        const ProjComplex& u = t.objects[static_cast<size_t>(j)];
        for (int n = u.lo; n <= u.hi(); ++n)
            for (int x : u.term(n))
                res.m[static_cast<size_t>(j)][static_cast<size_t>(x)] += (n % 2 == 0) ? 1 : -1;
    }
    res.square = nt == np;
    {
        std::vector<std::vector<mpq_class>> q;
        for (const auto& row : res.m) {
            std::vector<mpq_class> r;
            for (long v : row) r.push_back(mpq_class(v));
            q.push_back(std::move(r));
        }
        // rank over Q
        size_t rows = q.size(), cols = rows ? q[0].size() : 0;
        auto qq = q;
        int rk = 0;
        for (size_t c = 0; c < cols && static_cast<size_t>(rk) < rows; ++c) {
            size_t sel = static_cast<size_t>(rk);
            while (sel < rows && qq[sel][c] == 0) ++sel;
            if (sel == rows) continue;
            std::swap(qq[sel], qq[static_cast<size_t>(rk)]);
            for (size_t r = 0; r < rows; ++r) {
                if (r == static_cast<size_t>(rk) || qq[r][c] == 0) continue;
                mpq_class f = qq[r][c] / qq[static_cast<size_t>(rk)][c];
                for (size_t k = 0; k < cols; ++k) qq[r][k] -= f * qq[static_cast<size_t>(rk)][k];
            }
            ++rk;
        }
        res.rank = rk;
        if (res.square && nt > 0) {
            mpq_class d = det_q(q);
            res.det = mpz_class(d.get_num());
            res.unimodular = (d == 1 || d == -1);
        } else if (nt == 0) {
            res.unimodular = np == 0;
        }
    }
    return res;
}

/* ---- certificates ---- */

CertReplay replay_certificate(const TiltingSubcategoryData& t, const GenerationCertificate& cert,
                              std::uint64_t seed) {
    CertReplay out;
    if (!cert.found) {
        out.message = "certificate marked not-found";
        return out;
    }
    std::vector<ProjComplex> built;
    for (size_t si = 0; si < cert.steps.size(); ++si) {
        const CertStep& s = cert.steps[si];
        auto have = [&](int k) { return k >= 0 && k < static_cast<int>(built.size()); };
        switch (s.op) {
            case CertStep::Op::Take:
                if (s.amount < 0 || s.amount >= static_cast<int>(t.objects.size())) {
                    out.message = "take: object index out of range";
                    return out;
                }
                built.push_back(t.objects[static_cast<size_t>(s.amount)]);
                break;
            case CertStep::Op::Shift:
                if (!have(s.a)) {
                    out.message = "shift: bad step reference";
                    return out;
                }
                built.push_back(shift_complex(built[static_cast<size_t>(s.a)], s.amount));
                break;
            case CertStep::Op::Cone: {
                if (!have(s.a) || !have(s.b)) {
                    out.message = "cone: bad step reference";
                    return out;
                }
                ChainMap f;
                if (s.map) {
                    f = *s.map;
                    if (!complex_eq(f.src, built[static_cast<size_t>(s.a)]) ||
                        !complex_eq(f.dst, built[static_cast<size_t>(s.b)]) || !is_chain_map(f)) {
                        out.message = "cone: supplied map does not fit the built objects";
                        return out;
                    }
                } else {
                    HomBasis hb = hom_k(built[static_cast<size_t>(s.a)], built[static_cast<size_t>(s.b)], 0);
                    if (s.amount < 0 || s.amount >= hb.dim()) {
                        out.message = "cone: hom basis ordinal out of range";
                        return out;
                    }
                    f = hb.basis[static_cast<size_t>(s.amount)];
                }
                built.push_back(cone(f));
                break;
            }
            case CertStep::Op::Reduce:
                if (!have(s.a)) {
                    out.message = "reduce: bad step reference";
                    return out;
                }
                built.push_back(minimize(built[static_cast<size_t>(s.a)]).m);
                break;
            case CertStep::Op::Block: {
                if (!have(s.a)) {
                    out.message = "block: bad step reference";
                    return out;
                }
                BlockSplit bs = split_blocks(built[static_cast<size_t>(s.a)]);
                if (s.amount < 0 || s.amount >= static_cast<int>(bs.blocks.size())) {
                    out.message = "block: index out of range";
                    return out;
                }
                built.push_back(bs.blocks[static_cast<size_t>(s.amount)]);
                break;
            }
            case CertStep::Op::Equiv: {
                if (!have(s.a) || !s.map || !s.map2) {
                    out.message = "equiv: bad step reference or missing witnesses";
                    return out;
                }
                const ProjComplex& from = built[static_cast<size_t>(s.a)];
                const ChainMap& fwd = *s.map;
                const ChainMap& bwd = *s.map2;
                if (!complex_eq(fwd.src, from) || !complex_eq(bwd.dst, from) ||
                    !complex_eq(fwd.dst, bwd.src) || !is_chain_map(fwd) || !is_chain_map(bwd)) {
                    out.message = "equiv: witnesses do not fit";
                    return out;
                }
                if (!null_homotopic(chain_sub(compose_chain_maps(bwd, fwd), identity_chain_map(from))) ||
                    !null_homotopic(chain_sub(compose_chain_maps(fwd, bwd), identity_chain_map(fwd.dst)))) {
                    out.message = "equiv: witnesses are not mutually inverse up to homotopy";
                    return out;
                }
                built.push_back(fwd.dst);
                break;
            }
        }
    }
    if (built.empty()) {
        out.message = "empty certificate";
        return out;
    }
    out.result = built.back();
    ProjComplex target = stalk_complex(t.base, cert.target_obj, 0);
    HomotopyDecision dec = homotopy_equivalent(out.result, target, seed);
    if (!dec.equivalent) {
        out.message = "final object is not homotopy equivalent to the representable";
        return out;
    }
    out.ok = true;
    return out;
}

GenerationCertificate find_generation_certificate(const TiltingSubcategoryData& t, int target_obj,
                                                  int depth_cap, int size_cap, std::uint64_t seed) {
    GenerationCertificate cert;
    cert.target_obj = target_obj;
    cert.target_name = t.base->objects[static_cast<size_t>(target_obj)];

    // K0 screen: the class of P_x must lie in the rational row span
    {
        K0Result k0 = k0_matrix(t);
        int nt = static_cast<int>(t.objects.size());
        int np = t.base->n();
        FieldSpec q = FieldSpec::rationals();
        Mat a(q, np, nt);
        for (int j = 0; j < nt; ++j)
            for (int x = 0; x < np; ++x)
                a.at(x, j) = Scalar::of_int(q, k0.m[static_cast<size_t>(j)][static_cast<size_t>(x)]);
        Mat rhs(q, np, 1);
        rhs.at(target_obj, 0) = Scalar::one(q);
        if (!solve_linear(a, rhs).ok) {
            cert.found = false;
            return cert;  // NotFound is a value: the K0 obstruction is final
        }
    }

    ensure_basic_local(t.base);
    ProjComplex target = stalk_complex(t.base, target_obj, 0);

    struct Node {
        ProjComplex c;
        std::vector<CertStep> steps;
        int depth = 0;
    };
    std::vector<Node> nodes;
    std::map<std::string, int> seen;
    int shift_window = 3 + depth_cap;

    auto push_node = [&](ProjComplex c, std::vector<CertStep> steps, int depth) -> int {
        std::string key = c.key();
        auto it = seen.find(key);
        if (it != seen.end()) return -1;
        seen[key] = static_cast<int>(nodes.size());
        nodes.push_back({std::move(c), std::move(steps), depth});
        return static_cast<int>(nodes.size()) - 1;
    };
    auto merged_steps = [&](const Node& na, const Node& nb, int* ia, int* ib) {
        std::vector<CertStep> steps = na.steps;
        int off = static_cast<int>(steps.size());
        for (CertStep s : nb.steps) {
            if (s.a >= 0) s.a += off;
            if (s.b >= 0) s.b += off;
            steps.push_back(s);
        }
        *ia = off - 1;
        *ib = static_cast<int>(steps.size()) - 1;
        return steps;
    };
    auto check_target = [&](int idx) -> bool {
        if (idx < 0) return false;
        // nodes are minimal; a stalk class is hit only by the literal stalk
        const ProjComplex& c = nodes[static_cast<size_t>(idx)].c;
        if (c.lo != 0 || c.terms.size() != 1 || c.terms[0] != std::vector<int>{target_obj}) return false;
        return homotopy_equivalent(c, target, seed).equivalent;
    };
    auto finish = [&](int idx) {
        cert.steps = nodes[static_cast<size_t>(idx)].steps;
        cert.found = true;
        return cert;
    };

    for (int j = 0; j < static_cast<int>(t.objects.size()); ++j) {
        std::vector<CertStep> steps;
        steps.push_back({CertStep::Op::Take, -1, -1, j, std::nullopt, std::nullopt});
        steps.push_back({CertStep::Op::Reduce, 0, -1, 0, std::nullopt, std::nullopt});
        int idx = push_node(minimize(t.objects[static_cast<size_t>(j)]).m, std::move(steps), 0);
        if (check_target(idx)) return finish(idx);
    }

    size_t wave_begin = 0;
    for (int depth = 1; depth <= depth_cap; ++depth) {
        size_t wave_end = nodes.size();
        if (wave_begin == wave_end) {
            cert.found = false;  // frontier closed
            return cert;
        }
        std::vector<int> fresh;
        // shifts of the last wave
        for (size_t ni = wave_begin; ni < wave_end; ++ni)
            for (int dir = -1; dir <= 1; dir += 2) {
                const Node& nd = nodes[ni];
                if (nd.c.empty()) continue;
                ProjComplex sh = shift_complex(nd.c, dir);
                if (sh.lo < -shift_window || sh.hi() > shift_window) continue;
                std::vector<CertStep> steps = nd.steps;
                steps.push_back({CertStep::Op::Shift, static_cast<int>(steps.size()) - 1, -1, dir, std::nullopt, std::nullopt});
                int idx = push_node(std::move(sh), std::move(steps), depth);
                if (check_target(idx)) return finish(idx);
                if (idx >= 0) fresh.push_back(idx);
                if (static_cast<int>(nodes.size()) > size_cap)
                    throw Error("CapExceeded", "generation search size cap reached");
            }
        // cones between pairs with at least one endpoint in the last wave
        size_t scan_end = nodes.size();
        for (size_t ai = 0; ai < scan_end; ++ai)
            for (size_t bi = 0; bi < scan_end; ++bi) {
                if (ai < wave_begin && bi < wave_begin) continue;
                if (ai >= wave_end && bi >= wave_end) continue;  // only seed new wave from previous ones
                const Node& na = nodes[ai];
                const Node& nb = nodes[bi];
                if (na.c.empty() || nb.c.empty()) continue;
                HomBasis hb = hom_k(na.c, nb.c, 0);
                for (int k = 0; k < hb.dim(); ++k) {
                    int ia, ib;
                    std::vector<CertStep> steps = merged_steps(na, nb, &ia, &ib);
                    steps.push_back({CertStep::Op::Cone, ia, ib, k, std::nullopt, std::nullopt});
                    steps.push_back(
                        {CertStep::Op::Reduce, static_cast<int>(steps.size()) - 1, -1, 0, std::nullopt, std::nullopt});
                    ProjComplex cc;
                    try {
                        cc = minimize(cone(hb.basis[static_cast<size_t>(k)])).m;
                    } catch (const Error& e) {
                        throw Error("Internal", std::string("search cone failed: ") + e.what() + "\n  a=" +
                                                    na.c.key() + "\n  b=" + nb.c.key() + "\n  k=" + std::to_string(k));
                    }
                    std::vector<CertStep> base_steps = steps;
                    int idx = push_node(cc, std::move(steps), depth);
                    if (check_target(idx)) return finish(idx);
                    if (idx >= 0) {
                        fresh.push_back(idx);
                        BlockSplit bs = split_blocks(nodes[static_cast<size_t>(idx)].c);
                        if (bs.blocks.size() > 1)
                            for (size_t b = 0; b < bs.blocks.size(); ++b) {
                                std::vector<CertStep> bsteps = base_steps;
                                bsteps.push_back({CertStep::Op::Block, static_cast<int>(bsteps.size()) - 1, -1,
                                                  static_cast<int>(b), std::nullopt, std::nullopt});
                                int bidx = push_node(bs.blocks[b], std::move(bsteps), depth);
                                if (check_target(bidx)) return finish(bidx);
                                if (bidx >= 0) fresh.push_back(bidx);
                            }
                    }
                    if (static_cast<int>(nodes.size()) > size_cap)
                        throw Error("CapExceeded", "generation search size cap reached");
                }
            }
        if (fresh.empty()) {
            cert.found = false;
            return cert;
        }
        wave_begin = wave_end;
    }
    throw Error("CapExceeded", "generation search depth cap reached");
}

/* ---- end category ---- */

Mor EndCategory::class_of(int i, int j, const ChainMap& f) const {
    Vec coords = homs[static_cast<size_t>(i)][static_cast<size_t>(j)].coords_of(f);
    return Mor{i, j, std::move(coords)};
}

ChainMap EndCategory::rep_of(int i, int j, const Mor& m) const {
    return homs[static_cast<size_t>(i)][static_cast<size_t>(j)].from_coords(m.c);
}

EndCategory end_category(const TiltingSubcategoryData& t) {
    EndCategory e;
    e.t = t;
    int n = static_cast<int>(t.objects.size());
    e.homs.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        e.homs[static_cast<size_t>(i)].reserve(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            e.homs[static_cast<size_t>(i)].push_back(
                hom_k(t.objects[static_cast<size_t>(i)], t.objects[static_cast<size_t>(j)], 0));
    }
    auto cat = std::make_shared<FinKCat>();
    cat->init(t.base->field, t.names);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<std::string> labels;
            for (int k = 0; k < e.homs[static_cast<size_t>(i)][static_cast<size_t>(j)].dim(); ++k)
                labels.push_back("h" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k));
            cat->set_basis(i, j, std::move(labels));
        }
    for (int i = 0; i < n; ++i)
        cat->set_identity(
            i, e.homs[static_cast<size_t>(i)][static_cast<size_t>(i)].coords_of(
                   identity_chain_map(t.objects[static_cast<size_t>(i)])));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const HomBasis& hxy = e.homs[static_cast<size_t>(x)][static_cast<size_t>(y)];
                const HomBasis& hyz = e.homs[static_cast<size_t>(y)][static_cast<size_t>(z)];
                const HomBasis& hxz = e.homs[static_cast<size_t>(x)][static_cast<size_t>(z)];
                for (int f = 0; f < hxy.dim(); ++f)
                    for (int g = 0; g < hyz.dim(); ++g) {
                        ChainMap comp = compose_chain_maps(hyz.basis[static_cast<size_t>(g)],
                                                           hxy.basis[static_cast<size_t>(f)]);
                        cat->set_comp(x, y, z, f, g, hxz.coords_of(comp));
                    }
            }
    cat->finish();
    Report cc = cat->check();
    if (!cc.pass) throw Error("Internal", "end category fails the category check: " + cc.str());
    e.cat = cat;
    return e;
}

/* ---- radical and presentation matching ---- */

RadicalData category_radical(const FinKCat& c) {
    if (!c.field.is_rationals())
        throw Error("FieldNotRationals", "the trace-form radical needs characteristic 0");
    int n = c.n();
    // total algebra basis: (x, y, k) in row-major pair order
    struct Elt {
        int x, y, k;
    };
    std::vector<Elt> elts;
    std::vector<std::vector<int>> off(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            off[static_cast<size_t>(x)][static_cast<size_t>(y)] = static_cast<int>(elts.size());
            for (int k = 0; k < c.dim(x, y); ++k) elts.push_back({x, y, k});
        }
    int m = static_cast<int>(elts.size());
    const FieldSpec& fs = c.field;
    // product of basis elements as a total-algebra vector
    auto prod = [&](int i, int j) -> Vec {
        Vec v = vec_zero(fs, m);
        const Elt& a = elts[static_cast<size_t>(i)];  // a: x->y
        const Elt& b = elts[static_cast<size_t>(j)];  // b: x2->y2; product b∘a when y == x2
        if (a.y != b.x) return v;
        const Vec& sc = c.comp_basis(a.x, a.y, b.y, a.k, b.k);
        int base = off[static_cast<size_t>(a.x)][static_cast<size_t>(b.y)];
        for (size_t t = 0; t < sc.size(); ++t) v[static_cast<size_t>(base) + t] = sc[t];
        return v;
    };
    // trace of left multiplication by each basis element
    Vec ltrace = vec_zero(fs, m);
    for (int i = 0; i < m; ++i) {
        Scalar tr = Scalar::zero(fs);
        for (int j = 0; j < m; ++j) {
            Vec p = prod(j, i);  // e_i ∘ e_j (left mult by e_i)
            tr = tr + p[static_cast<size_t>(j)];
        }
        ltrace[static_cast<size_t>(i)] = tr;
    }
    // Gram matrix of the trace form kappa(a,b) = Tr(L_{ab})
    Mat gram(fs, m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Vec p = prod(j, i);  // e_i ∘ e_j
            Scalar s = Scalar::zero(fs);
            for (int t = 0; t < m; ++t)
                if (!p[static_cast<size_t>(t)].is_zero())
                    s = s + p[static_cast<size_t>(t)] * ltrace[static_cast<size_t>(t)];
            gram.at(i, j) = s;
        }
    Mat kernel = nullspace(gram);

    RadicalData rd;
    rd.rad.resize(static_cast<size_t>(n) * n);
    rd.rad2.resize(static_cast<size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            std::vector<Vec> rows;
            for (int r = 0; r < kernel.rows; ++r) {
                Vec comp = vec_zero(fs, c.dim(x, y));
                bool nz = false;
                for (int k = 0; k < c.dim(x, y); ++k) {
                    comp[static_cast<size_t>(k)] =
                        kernel.at(r, off[static_cast<size_t>(x)][static_cast<size_t>(y)] + k);
                    if (!comp[static_cast<size_t>(k)].is_zero()) nz = true;
                }
                if (nz) rows.push_back(std::move(comp));
            }
            rd.rad[static_cast<size_t>(x) * n + y] =
                rows.empty() ? Mat(fs, 0, c.dim(x, y)) : rref(Mat::from_rows(fs, rows)).m;
        }
    // rad^2 componentwise
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            std::vector<Vec> rows;
            for (int u = 0; u < n; ++u) {
                const Mat& r1 = rd.rad[static_cast<size_t>(x) * n + u];
                const Mat& r2 = rd.rad[static_cast<size_t>(u) * n + y];
                for (int i = 0; i < r1.rows; ++i)
                    for (int j = 0; j < r2.rows; ++j) {
                        Mor a{x, u, r1.row(i)}, b{u, y, r2.row(j)};
                        Mor p = c.compose(b, a);
                        if (!mor_is_zero(p)) rows.push_back(p.c);
                    }
            }
            rd.rad2[static_cast<size_t>(x) * n + y] =
                rows.empty() ? Mat(fs, 0, c.dim(x, y)) : rref(Mat::from_rows(fs, rows)).m;
        }
    return rd;
}

int RadicalData::arrow_count(int x, int y) const {
    size_t n = 0;
    // rad matrices are stored row-major over pairs; recover n from the size
    for (size_t probe = 1; probe * probe <= rad.size(); ++probe)
        if (probe * probe == rad.size()) n = probe;
    return rank(rad[static_cast<size_t>(x) * n + static_cast<size_t>(y)]) -
           rank(rad2[static_cast<size_t>(x) * n + static_cast<size_t>(y)]);
}

namespace {

// "a2.a1" -> {a2, a1}; "id(v)" -> {}
std::vector<std::string> split_label(const std::string& lab) {
    if (lab.rfind("id(", 0) == 0) return {};
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : lab) {
        if (ch == '.') {
            parts.push_back(cur);
            cur.clear();
        } else
            cur += ch;
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

MatchResult match_presentation(const CatPtr& e, const QuiverPresentation& p,
                               const std::vector<int>& obj_hint, const std::vector<Mor>& arrow_hint) {
    MatchResult res;
    if (!e->field.is_rationals()) throw Error("FieldNotRationals", "match_presentation runs over Q only");
    int nv = static_cast<int>(p.vertices.size());
    if (static_cast<int>(obj_hint.size()) != nv || arrow_hint.size() != p.arrows.size()) {
        res.rep.fail("hint arity mismatch");
        return res;
    }
    if (e->n() != nv) {
        res.rep.fail("object counts differ: " + std::to_string(e->n()) + " vs " + std::to_string(nv));
        return res;
    }
    {
        std::vector<bool> hit(static_cast<size_t>(nv), false);
        for (int v : obj_hint) {
            if (v < 0 || v >= nv || hit[static_cast<size_t>(v)]) {
                res.rep.fail("object hint is not a bijection");
                return res;
            }
            hit[static_cast<size_t>(v)] = true;
        }
    }
    for (size_t a = 0; a < p.arrows.size(); ++a) {
        const Mor& m = arrow_hint[a];
        if (m.src != obj_hint[static_cast<size_t>(p.arrows[a].src)] ||
            m.dst != obj_hint[static_cast<size_t>(p.arrows[a].dst)]) {
            res.rep.fail("arrow hint " + p.arrows[a].name + " has wrong endpoints");
            return res;
        }
    }
    // radical arrow-count screen
    RadicalData rd = category_radical(*e);
    for (int x = 0; x < nv; ++x)
        for (int y = 0; y < nv; ++y) {
            int want = 0;
            for (const auto& ar : p.arrows)
                if (ar.src == x && ar.dst == y) ++want;
            int got = rd.arrow_count(obj_hint[static_cast<size_t>(x)], obj_hint[static_cast<size_t>(y)]);
            if (want != got) {
                res.rep.fail("rad/rad^2 dimension at (" + p.vertices[static_cast<size_t>(x)] + ", " +
                             p.vertices[static_cast<size_t>(y)] + ") is " + std::to_string(got) + ", expected " +
                             std::to_string(want));
                return res;
            }
        }
    // relations must evaluate to zero through the hints
    auto eval_path = [&](const Path& path, int src_vertex) -> Mor {
        Mor m = e->id_mor(obj_hint[static_cast<size_t>(src_vertex)]);
        for (int a : path) m = e->compose(arrow_hint[static_cast<size_t>(a)], m);
        return m;
    };
    for (const auto& rel : p.relations) {
        int sv = rel[0].path.empty() ? 0 : p.arrows[static_cast<size_t>(rel[0].path.front())].src;
        Mor acc = mor_scale(rel[0].coeff, eval_path(rel[0].path, sv));
        for (size_t t = 1; t < rel.size(); ++t)
            acc = mor_add(acc, mor_scale(rel[t].coeff, eval_path(rel[t].path, sv)));
        if (!mor_is_zero(acc)) {
            res.rep.fail("relation does not vanish in the end category");
            return res;
        }
    }
    // build the functor on the presented category by evaluating basis labels
    CatPtr cp = build_category(p, e->field);
    KFunctor f;
    f.src = cp;
    f.dst = e;
    for (int v = 0; v < nv; ++v) f.obj_map.push_back(obj_hint[static_cast<size_t>(v)]);
    for (int x = 0; x < nv; ++x)
        for (int y = 0; y < nv; ++y) {
            Mat m(e->field, e->dim(f.fobj(x), f.fobj(y)), cp->dim(x, y));
            for (int k = 0; k < cp->dim(x, y); ++k) {
                auto parts = split_label(cp->label(x, y, k));
                Mor img = e->id_mor(f.fobj(x));
                for (size_t t = parts.size(); t-- > 0;) {
                    int ai = -1;
                    for (size_t a = 0; a < p.arrows.size(); ++a)
                        if (p.arrows[a].name == parts[t]) ai = static_cast<int>(a);
                    if (ai < 0) throw Error("Internal", "basis label mentions an unknown arrow");
                    img = e->compose(arrow_hint[static_cast<size_t>(ai)], img);
                }
                for (int r = 0; r < m.rows; ++r) m.at(r, k) = img.c[static_cast<size_t>(r)];
            }
            f.hom_mats.push_back(std::move(m));
        }
    Report fr = check_functor(f);
    if (!fr.pass) {
        res.rep.merge(fr, "induced functor");
        return res;
    }
    for (int x = 0; x < nv; ++x)
        for (int y = 0; y < nv; ++y) {
            const Mat& m = f.hom_mat(x, y);
            if (m.rows != m.cols || (m.rows > 0 && !inverse(m))) {
                res.rep.fail("hom matrix at (" + p.vertices[static_cast<size_t>(x)] + ", " +
                             p.vertices[static_cast<size_t>(y)] + ") is not invertible");
                return res;
            }
        }
    res.ok = true;
    res.iso = std::move(f);
    res.rep.note("presentation matched: isomorphism onto the end category");
    return res;
}

/* ---- class-level inverse ---- */

std::optional<ChainMap> kclass_inverse(const ChainMap& f) {
    const ProjComplex& u = f.src;
    const ProjComplex& v = f.dst;
    if (u.empty() && v.empty()) return zero_chain_map(v, u);
    HomBasis back = hom_k(v, u, 0);
    HomBasis endu = hom_k(u, u, 0), endv = hom_k(v, v, 0);
    int d = back.dim();
    if (d == 0) {
        // invertible only if both identity classes vanish (contractible ends)
        if (endu.dim() == 0 && endv.dim() == 0) return zero_chain_map(v, u);
        return std::nullopt;
    }
    const FieldSpec& fs = u.base->field;
    Mat a(fs, endu.dim() + endv.dim(), d);
    for (int k = 0; k < d; ++k) {
        ChainMap gf = compose_chain_maps(back.basis[static_cast<size_t>(k)], f);
        ChainMap fg = compose_chain_maps(f, back.basis[static_cast<size_t>(k)]);
        Vec cu = endu.coords_of(gf);
        Vec cv = endv.coords_of(fg);
        for (int i = 0; i < endu.dim(); ++i) a.at(i, k) = cu[static_cast<size_t>(i)];
        for (int i = 0; i < endv.dim(); ++i) a.at(endu.dim() + i, k) = cv[static_cast<size_t>(i)];
    }
    Vec idu = endu.coords_of(identity_chain_map(u));
    Vec idv = endv.coords_of(identity_chain_map(v));
    Mat rhs(fs, endu.dim() + endv.dim(), 1);
    for (int i = 0; i < endu.dim(); ++i) rhs.at(i, 0) = idu[static_cast<size_t>(i)];
    for (int i = 0; i < endv.dim(); ++i) rhs.at(endu.dim() + i, 0) = idv[static_cast<size_t>(i)];
    LinSolve sol = solve_linear(a, rhs);
    if (!sol.ok) return std::nullopt;
    return back.from_coords(sol.particular.col(0));
}

/* ---- tilting colax verification ---- */

TiltingColaxReport check_tilting_colax(const TiltingColaxData& td, const TiltingCheckOptions& opt) {
    TiltingColaxReport out;
    const ColaxFunctor& X = *td.x;
    const IndexCat& I = X.index;
    {
        Report ax = check_colax(X);
        if (!ax.pass) {
            out.overall.merge(ax, "underlying colax functor");
            return out;
        }
    }
    // per-fiber presilting + K0 + generation
    for (int i = 0; i < I.n_obj(); ++i) {
        const TiltingSubcategoryData& t = td.fibers[static_cast<size_t>(i)];
        Report ps = check_presilting(t);
        out.presilting.push_back(ps);
        out.overall.merge(ps, "presilting in fiber " + I.objects[static_cast<size_t>(i)]);
        K0Result k0 = k0_matrix(t);
        out.k0.push_back(k0);
        if (!k0.unimodular)
            out.overall.fail("K0 matrix of fiber " + I.objects[static_cast<size_t>(i)] +
                             " is not unimodular (|det| != 1)");
        std::vector<GenerationCertificate> fiber_certs;
        for (int x = 0; x < t.base->n(); ++x) {
            // user-supplied certificate first
            const GenerationCertificate* user = nullptr;
            for (const auto& c : td.user_certs)
                if (c.fiber == i && c.target_obj == x) user = &c;
            GenerationCertificate got;
            if (user) {
                CertReplay rr = replay_certificate(t, *user, opt.seed);
                if (rr.ok)
                    got = *user;
                else
                    out.overall.fail("supplied certificate for " + t.base->objects[static_cast<size_t>(x)] +
                                     " does not replay: " + rr.message);
            }
            if (!got.found) {
                try {
                    got = find_generation_certificate(t, x, opt.depth_cap, opt.size_cap, opt.seed);
                } catch (const Error& e) {
                    if (e.kind != "CapExceeded") throw;
                    got.found = false;
                }
                if (!got.found)
                    out.overall.fail("no generation certificate for representable " +
                                     t.base->objects[static_cast<size_t>(x)] + " in fiber " +
                                     I.objects[static_cast<size_t>(i)]);
            }
            got.fiber = i;
            fiber_certs.push_back(std::move(got));
        }
        out.certs.push_back(std::move(fiber_certs));
    }
    // rho: endpoints, invertibility in K^b, naturality up to homotopy on generators
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        const TiltingSubcategoryData& ti = td.fibers[static_cast<size_t>(m.src)];
        const TiltingSubcategoryData& tj = td.fibers[static_cast<size_t>(m.dst)];
        for (size_t u = 0; u < ti.objects.size(); ++u) {
            const ChainMap& rho = td.rho[static_cast<size_t>(a)][u];
            ProjComplex lhs = map_complex(X.at(a), ti.objects[u]);
            const ProjComplex& rhs = tj.objects[static_cast<size_t>(td.act_obj[static_cast<size_t>(a)][u])];
            if (!complex_eq(rho.src, lhs) || !complex_eq(rho.dst, rhs) || !is_chain_map(rho)) {
                out.rho_report.fail("rho(" + m.name + ") at " + ti.names[u] + " is not a chain map with the right endpoints");
                continue;
            }
            if (!kclass_inverse(rho))
                out.rho_report.fail("rho(" + m.name + ") at " + ti.names[u] + " is not invertible in K^b");
        }
        for (const auto& [gname, gmap] : td.gens[static_cast<size_t>(m.src)]) {
            auto it = td.act_gen[static_cast<size_t>(a)].find(gname);
            if (it == td.act_gen[static_cast<size_t>(a)].end()) {
                out.rho_report.fail("generator " + gname + " has no image under T(" + m.name + ")");
                continue;
            }
            int usrc = -1, udst = -1;
            for (size_t u = 0; u < ti.objects.size(); ++u) {
                if (complex_eq(gmap.src, ti.objects[u])) usrc = static_cast<int>(u);
                if (complex_eq(gmap.dst, ti.objects[u])) udst = static_cast<int>(u);
            }
            if (usrc < 0 || udst < 0) {
                out.rho_report.fail("generator " + gname + " is not a map between listed objects");
                continue;
            }
            ChainMap lhs = compose_chain_maps(td.rho[static_cast<size_t>(a)][static_cast<size_t>(udst)],
                                              map_chain_map(X.at(a), gmap));
            ChainMap rhs = compose_chain_maps(it->second, td.rho[static_cast<size_t>(a)][static_cast<size_t>(usrc)]);
            if (!null_homotopic(chain_sub(lhs, rhs)))
                out.rho_report.fail("rho naturality fails at generator " + gname + " along " + m.name);
        }
    }
    out.overall.merge(out.rho_report, "equivariant inclusion");
    out.certified = out.overall.pass;
    return out;
}

AssembledTilting assemble_tilting(const TiltingColaxData& td) {
    AssembledTilting at;
    const ColaxFunctor& X = *td.x;
    const IndexCat& I = X.index;
    for (int i = 0; i < I.n_obj(); ++i) at.ends.push_back(end_category(td.fibers[static_cast<size_t>(i)]));

    std::vector<CatPtr> fibers;
    for (const auto& e : at.ends) fibers.push_back(e.cat);
    std::vector<KFunctor> arrows;
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        const EndCategory& ei = at.ends[static_cast<size_t>(m.src)];
        const EndCategory& ej = at.ends[static_cast<size_t>(m.dst)];
        KFunctor f;
        f.src = ei.cat;
        f.dst = ej.cat;
        for (size_t u = 0; u < ei.t.objects.size(); ++u)
            f.obj_map.push_back(td.act_obj[static_cast<size_t>(a)][u]);
        // precompute class inverses of rho
        std::vector<ChainMap> rho_inv;
        for (size_t u = 0; u < ei.t.objects.size(); ++u) {
            auto inv = kclass_inverse(td.rho[static_cast<size_t>(a)][u]);
            if (!inv) throw Error("BadArgument", "rho(" + m.name + ") is not invertible in K^b");
            rho_inv.push_back(*inv);
        }
        for (int u = 0; u < ei.cat->n(); ++u)
            for (int v = 0; v < ei.cat->n(); ++v) {
                int fu = f.fobj(u), fv = f.fobj(v);
                Mat mm(ei.cat->field, ej.cat->dim(fu, fv), ei.cat->dim(u, v));
                for (int k = 0; k < ei.cat->dim(u, v); ++k) {
                    // conjugation by rho realizes T(a) on morphism classes
                    ChainMap rep = ei.homs[static_cast<size_t>(u)][static_cast<size_t>(v)].basis[static_cast<size_t>(k)];
                    ChainMap img = compose_chain_maps(
                        td.rho[static_cast<size_t>(a)][static_cast<size_t>(v)],
                        compose_chain_maps(map_chain_map(X.at(a), rep), rho_inv[static_cast<size_t>(u)]));
                    Mor cls = ej.class_of(fu, fv, img);
                    for (int r = 0; r < mm.rows; ++r) mm.at(r, k) = cls.c[static_cast<size_t>(r)];
                }
                f.hom_mats.push_back(std::move(mm));
            }
        Report fr = check_functor(f);
        if (!fr.pass)
            throw Error("BadArgument", "conjugation along " + m.name + " is not functorial: " + fr.str());
        arrows.push_back(std::move(f));
    }
    at.t_colax = make_strict(I, std::move(fibers), std::move(arrows));
    return at;
}

}  // namespace grcat
