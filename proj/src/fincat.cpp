#include "grcat/fincat.hpp"

#include <algorithm>
#include <sstream>

#include "grcat/rng.hpp"

namespace grcat {

bool mor_eq(const Mor& a, const Mor& b) {
    return a.src == b.src && a.dst == b.dst && a.c == b.c;
}

bool mor_is_zero(const Mor& m) { return vec_is_zero(m.c); }

Mor mor_add(const Mor& a, const Mor& b) {
    if (a.src != b.src || a.dst != b.dst) throw Error("ShapeMismatch", "mor_add on non-parallel morphisms");
    return Mor{a.src, a.dst, vec_add(a.c, b.c)};
}

Mor mor_scale(const Scalar& s, const Mor& a) { return Mor{a.src, a.dst, vec_scale(s, a.c)}; }

/* ---- FinKCat ---- */

void FinKCat::init(const FieldSpec& f, std::vector<std::string> objs) {
    field = f;
    objects = std::move(objs);
    size_t n = objects.size();
    labels_.assign(n * n, {});
    id_coords_.assign(n, {});
    comp_.assign(n * n * n, {});
}

void FinKCat::set_basis(int x, int y, std::vector<std::string> labs) {
    labels_[idx(x, y)] = std::move(labs);
}

void FinKCat::set_identity(int x, Vec coords) { id_coords_[static_cast<size_t>(x)] = std::move(coords); }

void FinKCat::set_comp(int x, int y, int z, int f, int g, Vec coords) {
    auto& t = comp_[idx3(x, y, z)];
    size_t need = static_cast<size_t>(dim(x, y)) * dim(y, z);
    if (t.size() != need) t.assign(need, vec_zero(field, dim(x, z)));
    t[static_cast<size_t>(g) * dim(x, y) + static_cast<size_t>(f)] = std::move(coords);
}

void FinKCat::finish() {
    label_index_.clear();
    for (int x = 0; x < n(); ++x)
        for (int y = 0; y < n(); ++y) {
            const auto& labs = labels_[idx(x, y)];
            for (int k = 0; k < static_cast<int>(labs.size()); ++k)
                label_index_[labs[static_cast<size_t>(k)]] = {x, y, k};
        }
    // materialize empty composition tensors so lookups are uniform
    for (int x = 0; x < n(); ++x)
        for (int y = 0; y < n(); ++y)
            for (int z = 0; z < n(); ++z) {
                auto& t = comp_[idx3(x, y, z)];
                size_t need = static_cast<size_t>(dim(x, y)) * dim(y, z);
                if (t.size() != need) t.assign(need, vec_zero(field, dim(x, z)));
            }
}

int FinKCat::total_dim() const {
    int s = 0;
    for (int x = 0; x < n(); ++x)
        for (int y = 0; y < n(); ++y) s += dim(x, y);
    return s;
}

const Vec& FinKCat::comp_basis(int x, int y, int z, int f, int g) const {
    return comp_[idx3(x, y, z)][static_cast<size_t>(g) * dim(x, y) + static_cast<size_t>(f)];
}

Mor FinKCat::compose(const Mor& g, const Mor& f) const {
    if (f.dst != g.src) throw Error("SourceTargetMismatch", "compose: target(f) != source(g)");
    Mor r = zero_mor(f.src, g.dst);
    for (int i = 0; i < dim(f.src, f.dst); ++i) {
        const Scalar& cf = f.c[static_cast<size_t>(i)];
        if (cf.is_zero()) continue;
        for (int j = 0; j < dim(g.src, g.dst); ++j) {
            const Scalar& cg = g.c[static_cast<size_t>(j)];
            if (cg.is_zero()) continue;
            const Vec& sc = comp_basis(f.src, f.dst, g.dst, i, j);
            Scalar w = cf * cg;
            for (size_t t = 0; t < sc.size(); ++t)
                if (!sc[t].is_zero()) r.c[t] = r.c[t] + w * sc[t];
        }
    }
    return r;
}

int FinKCat::obj_index(const std::string& name) const {
    for (int i = 0; i < n(); ++i)
        if (objects[static_cast<size_t>(i)] == name) return i;
    return -1;
}

std::optional<std::array<int, 3>> FinKCat::find_label(const std::string& lab) const {
    auto it = label_index_.find(lab);
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

std::string FinKCat::mor_str(const Mor& m) const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < dim(m.src, m.dst); ++k) {
        const Scalar& s = m.c[static_cast<size_t>(k)];
        if (s.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (!s.is_one()) os << s.str() << "*";
        os << label(m.src, m.dst, k);
    }
    if (first) os << "0";
    return os.str();
}

Report FinKCat::check() const {
    Report rep;
    for (int x = 0; x < n() && rep.pass; ++x)
        for (int y = 0; y < n() && rep.pass; ++y)
            for (int k = 0; k < dim(x, y); ++k) {
                Mor f = basis_mor(x, y, k);
                if (!mor_eq(compose(id_mor(y), f), f)) {
                    rep.fail("left unit at " + label(x, y, k));
                    break;
                }
                if (!mor_eq(compose(f, id_mor(x)), f)) {
                    rep.fail("right unit at " + label(x, y, k));
                    break;
                }
            }
    for (int x = 0; x < n() && rep.pass; ++x)
        for (int y = 0; y < n() && rep.pass; ++y)
            for (int z = 0; z < n() && rep.pass; ++z)
                for (int w = 0; w < n() && rep.pass; ++w)
                    for (int i = 0; i < dim(x, y) && rep.pass; ++i)
                        for (int j = 0; j < dim(y, z) && rep.pass; ++j)
                            for (int k = 0; k < dim(z, w); ++k) {
                                Mor f = basis_mor(x, y, i), g = basis_mor(y, z, j), h = basis_mor(z, w, k);
                                if (!mor_eq(compose(compose(h, g), f), compose(h, compose(g, f)))) {
                                    rep.fail("associativity at (" + label(x, y, i) + ", " + label(y, z, j) +
                                             ", " + label(z, w, k) + ")");
                                    break;
                                }
                            }
    return rep;
}

/* ---- quiver presentations ---- */

static int path_src(const QuiverPresentation& p, const Path& path, int fallback) {
    if (path.empty()) return fallback;
    return p.arrows[static_cast<size_t>(path.front())].src;
}

static int path_dst(const QuiverPresentation& p, const Path& path, int fallback) {
    if (path.empty()) return fallback;
    return p.arrows[static_cast<size_t>(path.back())].dst;
}

std::string path_str(const QuiverPresentation& p, const Path& path, int src_vertex) {
    if (path.empty()) return "id(" + p.vertices[static_cast<size_t>(src_vertex)] + ")";
    // '.' keeps labels free of the composition operator of the text format
    std::string s;
    for (size_t i = path.size(); i-- > 0;) {
        s += p.arrows[static_cast<size_t>(path[i])].name;
        if (i) s += ".";
    }
    return s;
}

namespace {

struct DegreeData {
    // per pair index x*n+y: sorted path list and normal forms
    std::vector<std::vector<Path>> paths;
    // nf[pair][path index] = sparse combo over (global basis ids of the pair)
    std::vector<std::vector<std::vector<std::pair<int, Scalar>>>> nf;
};

}  // namespace

CatPtr build_category(const QuiverPresentation& p, const FieldSpec& field) {
    int nv = static_cast<int>(p.vertices.size());
    int na = static_cast<int>(p.arrows.size());
    for (const auto& a : p.arrows)
        if (a.src < 0 || a.src >= nv || a.dst < 0 || a.dst >= nv)
            throw Error("BadArgument", "arrow " + a.name + " has out-of-range endpoint");

    int max_rel_len = 0;
    for (const auto& rel : p.relations) {
        if (rel.empty()) throw Error("InhomogeneousRelation", "empty relation");
        size_t len = rel[0].path.size();
        int s = path_src(p, rel[0].path, -1), d = path_dst(p, rel[0].path, -1);
        if (len < 2) throw Error("InhomogeneousRelation", "relation path of length < 2");
        for (const auto& t : rel) {
            if (t.path.size() != len)
                throw Error("InhomogeneousRelation", "relation mixes path lengths");
            if (path_src(p, t.path, -1) != s || path_dst(p, t.path, -1) != d)
                throw Error("InhomogeneousRelation", "relation paths are not parallel");
            for (size_t i = 0; i + 1 < t.path.size(); ++i)
                if (p.arrows[static_cast<size_t>(t.path[i])].dst != p.arrows[static_cast<size_t>(t.path[i + 1])].src)
                    throw Error("BadArgument", "relation contains a non-composable path");
        }
        max_rel_len = std::max(max_rel_len, static_cast<int>(len));
    }
    int cap = p.length_cap;
    if (cap <= 0) cap = std::max(1, na * std::max(1, max_rel_len));
    if (max_rel_len > cap) throw Error("BadArgument", "length_cap below max relation length");

    auto pidx = [nv](int x, int y) { return static_cast<size_t>(x) * nv + static_cast<size_t>(y); };

    auto rel_coeff = [&field](const Scalar& c) -> Scalar {
        if (c.field() == field) return c;
        if (c.field().is_rationals()) return Scalar::from_mpq(field, c.rat());
        throw Error("FieldMismatch", "relation coefficient over " + c.field().str());
    };

    std::vector<DegreeData> degs;
    std::vector<std::vector<std::string>> basis_labels(static_cast<size_t>(nv) * nv);
    std::vector<std::vector<Path>> rep(static_cast<size_t>(nv) * nv);  // representative path per basis id

    long total_paths_guard = 0;
    int death = cap + 2;  // first degree at which everything vanishes

    for (int d = 0; d <= cap + 1; ++d) {
        DegreeData dd;
        dd.paths.assign(static_cast<size_t>(nv) * nv, {});
        dd.nf.assign(static_cast<size_t>(nv) * nv, {});
        // enumerate paths of length d
        if (d == 0) {
            for (int x = 0; x < nv; ++x) dd.paths[pidx(x, x)].push_back({});
        } else {
            const auto& prev = degs[static_cast<size_t>(d - 1)];
            for (int x = 0; x < nv; ++x)
                for (int u = 0; u < nv; ++u)
                    for (const Path& q : prev.paths[pidx(x, u)])
                        for (int a = 0; a < na; ++a)
                            if (p.arrows[static_cast<size_t>(a)].src == u) {
                                Path ext = q;
                                ext.push_back(a);
                                dd.paths[pidx(x, p.arrows[static_cast<size_t>(a)].dst)].push_back(std::move(ext));
                            }
            for (auto& v : dd.paths) std::sort(v.begin(), v.end());
        }
        long npaths = 0;
        for (const auto& v : dd.paths) npaths += static_cast<long>(v.size());
        total_paths_guard += npaths;
        if (total_paths_guard > 2000000)
            throw Error("CapExceeded", "path enumeration exceeds guard; quotient is likely infinite-dimensional");
        if (npaths == 0) {
            death = d;
            break;
        }

        // eliminate the degree-d slice of the relation ideal, pair by pair
        bool any_basis = false;
        for (int x = 0; x < nv; ++x)
            for (int y = 0; y < nv; ++y) {
                auto& plist = dd.paths[pidx(x, y)];
                if (plist.empty()) continue;
                std::map<Path, int> where;
                for (int i = 0; i < static_cast<int>(plist.size()); ++i) where[plist[static_cast<size_t>(i)]] = i;

                // sandwiches pre * rel * post of total degree d
                std::vector<Vec> gens;
                for (const auto& rel : p.relations) {
                    int len = static_cast<int>(rel[0].path.size());
                    if (len > d) continue;
                    int rs = path_src(p, rel[0].path, -1), rd = path_dst(p, rel[0].path, -1);
                    for (int d1 = 0; d1 + len <= d; ++d1) {
                        int d2 = d - len - d1;
                        const auto& pre_list = degs[static_cast<size_t>(d1)].paths[pidx(x, rs)];
                        const auto& post_list = degs[static_cast<size_t>(d2)].paths[pidx(rd, y)];
                        for (const Path& pre : pre_list)
                            for (const Path& post : post_list) {
                                Vec g = vec_zero(field, static_cast<int>(plist.size()));
                                for (const auto& t : rel) {
                                    Path whole = pre;
                                    whole.insert(whole.end(), t.path.begin(), t.path.end());
                                    whole.insert(whole.end(), post.begin(), post.end());
                                    auto it = where.find(whole);
                                    if (it == where.end()) throw Error("Internal", "sandwich path not enumerated");
                                    g[static_cast<size_t>(it->second)] =
                                        g[static_cast<size_t>(it->second)] + rel_coeff(t.coeff);
                                }
                                if (!vec_is_zero(g)) gens.push_back(std::move(g));
                            }
                    }
                }

                std::vector<bool> is_pivot(plist.size(), false);
                std::vector<std::vector<std::pair<int, Scalar>>> nf(plist.size());
                Rref rr;
                if (!gens.empty()) {
                    rr = rref(Mat::from_rows(field, gens));
                    for (int c : rr.pivots) is_pivot[static_cast<size_t>(c)] = true;
                }
                // free paths become basis elements, in (degree, lex) order
                std::vector<int> basis_of_col(plist.size(), -1);
                for (int i = 0; i < static_cast<int>(plist.size()); ++i) {
                    if (is_pivot[static_cast<size_t>(i)]) continue;
                    int id = static_cast<int>(basis_labels[pidx(x, y)].size());
                    basis_labels[pidx(x, y)].push_back(path_str(p, plist[static_cast<size_t>(i)], x));
                    rep[pidx(x, y)].push_back(plist[static_cast<size_t>(i)]);
                    basis_of_col[static_cast<size_t>(i)] = id;
                    nf[static_cast<size_t>(i)] = {{id, Scalar::one(field)}};
                    any_basis = true;
                }
                // pivot paths reduce to minus the free tail of their rref row
                for (int pi = 0; pi < rr.rank; ++pi) {
                    int pc = rr.pivots[static_cast<size_t>(pi)];
                    std::vector<std::pair<int, Scalar>> combo;
                    for (int c = 0; c < static_cast<int>(plist.size()); ++c) {
                        if (c == pc || is_pivot[static_cast<size_t>(c)]) continue;
                        const Scalar& v = rr.m.at(pi, c);
                        if (!v.is_zero()) combo.push_back({basis_of_col[static_cast<size_t>(c)], v.neg()});
                    }
                    nf[static_cast<size_t>(pc)] = std::move(combo);
                }
                dd.nf[pidx(x, y)] = std::move(nf);
            }

        degs.push_back(std::move(dd));
        if (!any_basis) {
            death = d;
            break;
        }
        if (d == cap + 1)
            throw Error("CapExceeded",
                        "paths of length " + std::to_string(cap + 1) + " do not all lie in the relation ideal");
    }

    auto cat = std::make_shared<FinKCat>();
    cat->init(field, p.vertices);
    for (int x = 0; x < nv; ++x)
        for (int y = 0; y < nv; ++y) cat->set_basis(x, y, basis_labels[pidx(x, y)]);
    for (int x = 0; x < nv; ++x) cat->set_identity(x, vec_unit(field, cat->dim(x, x), 0));

    // normal form of an arbitrary enumerated path
    auto nf_of = [&](const Path& path, int x, int y) -> std::vector<std::pair<int, Scalar>> {
        int d = static_cast<int>(path.size());
        if (d >= static_cast<int>(degs.size())) return {};
        const auto& dd = degs[static_cast<size_t>(d)];
        const auto& plist = dd.paths[pidx(x, y)];
        auto it = std::lower_bound(plist.begin(), plist.end(), path);
        if (it == plist.end() || *it != path) throw Error("Internal", "path lookup failed");
        return dd.nf[pidx(x, y)][static_cast<size_t>(it - plist.begin())];
    };

    for (int x = 0; x < nv; ++x)
        for (int y = 0; y < nv; ++y)
            for (int z = 0; z < nv; ++z) {
                int dxy = cat->dim(x, y), dyz = cat->dim(y, z), dxz = cat->dim(x, z);
                for (int f = 0; f < dxy; ++f)
                    for (int g = 0; g < dyz; ++g) {
                        Path whole = rep[pidx(x, y)][static_cast<size_t>(f)];
                        const Path& tail = rep[pidx(y, z)][static_cast<size_t>(g)];
                        whole.insert(whole.end(), tail.begin(), tail.end());
                        Vec coords = vec_zero(field, dxz);
                        if (static_cast<int>(whole.size()) < death)
                            for (const auto& [id, s] : nf_of(whole, x, z)) coords[static_cast<size_t>(id)] = s;
                        cat->set_comp(x, y, z, f, g, std::move(coords));
                    }
            }
    cat->finish();
    return cat;
}

Mor eval_path(const FinKCat& c, const Path& path, int src_obj, const QuiverPresentation& p) {
    Mor m = c.id_mor(src_obj);
    for (int a : path) {
        auto loc = c.find_label(p.arrows[static_cast<size_t>(a)].name);
        if (!loc) throw Error("UnresolvedReference", "arrow " + p.arrows[static_cast<size_t>(a)].name + " is not a basis label");
        m = c.compose(c.basis_mor((*loc)[0], (*loc)[1], (*loc)[2]), m);
    }
    return m;
}

/* ---- functors ---- */

Mor KFunctor::apply(const Mor& m) const {
    Vec out = mat_apply(hom_mat(m.src, m.dst), m.c);
    return Mor{fobj(m.src), fobj(m.dst), std::move(out)};
}

KFunctor identity_functor(const CatPtr& c) {
    KFunctor f;
    f.src = f.dst = c;
    f.obj_map.resize(static_cast<size_t>(c->n()));
    for (int i = 0; i < c->n(); ++i) f.obj_map[static_cast<size_t>(i)] = i;
    f.hom_mats.reserve(static_cast<size_t>(c->n()) * c->n());
    for (int x = 0; x < c->n(); ++x)
        for (int y = 0; y < c->n(); ++y) f.hom_mats.push_back(Mat::identity(c->field, c->dim(x, y)));
    return f;
}

KFunctor compose_functors(const KFunctor& g, const KFunctor& f) {
    if (f.dst.get() != g.src.get()) throw Error("SourceTargetMismatch", "compose_functors");
    KFunctor h;
    h.src = f.src;
    h.dst = g.dst;
    h.obj_map.resize(f.obj_map.size());
    for (size_t i = 0; i < f.obj_map.size(); ++i)
        h.obj_map[i] = g.fobj(f.obj_map[i]);
    for (int x = 0; x < f.src->n(); ++x)
        for (int y = 0; y < f.src->n(); ++y)
            h.hom_mats.push_back(mat_mul(g.hom_mat(f.fobj(x), f.fobj(y)), f.hom_mat(x, y)));
    return h;
}

Report check_functor(const KFunctor& f) {
    Report rep;
    const FinKCat& C = *f.src;
    const FinKCat& D = *f.dst;
    for (int x = 0; x < C.n(); ++x) {
        if (!mor_eq(f.apply(C.id_mor(x)), D.id_mor(f.fobj(x)))) {
            rep.fail("F(id) != id at object " + C.objects[static_cast<size_t>(x)]);
            return rep;
        }
    }
    for (int x = 0; x < C.n(); ++x)
        for (int y = 0; y < C.n(); ++y)
            for (int z = 0; z < C.n(); ++z)
                for (int i = 0; i < C.dim(x, y); ++i)
                    for (int j = 0; j < C.dim(y, z); ++j) {
                        Mor a = C.basis_mor(x, y, i), b = C.basis_mor(y, z, j);
                        if (!mor_eq(f.apply(C.compose(b, a)), D.compose(f.apply(b), f.apply(a)))) {
                            rep.fail("F(g.f) != F(g).F(f) at (" + C.label(x, y, i) + ", " + C.label(y, z, j) + ")");
                            return rep;
                        }
                    }
    return rep;
}

bool functor_eq(const KFunctor& f, const KFunctor& g) {
    if (f.src.get() != g.src.get() || f.dst.get() != g.dst.get()) return false;
    if (f.obj_map != g.obj_map) return false;
    for (size_t i = 0; i < f.hom_mats.size(); ++i)
        if (!(f.hom_mats[i] == g.hom_mats[i])) return false;
    return true;
}

/* ---- natural transformations ---- */

NatTransf identity_nat(const KFunctor& f) {
    NatTransf a;
    a.f = f;
    a.g = f;
    for (int x = 0; x < f.src->n(); ++x) a.comp.push_back(f.dst->id_mor(f.fobj(x)));
    return a;
}

Report check_nat(const NatTransf& a) {
    Report rep;
    const FinKCat& C = *a.f.src;
    const FinKCat& D = *a.f.dst;
    if (a.f.src.get() != a.g.src.get() || a.f.dst.get() != a.g.dst.get()) {
        rep.fail("functors are not parallel");
        return rep;
    }
    for (int x = 0; x < C.n(); ++x) {
        const Mor& cx = a.comp[static_cast<size_t>(x)];
        if (cx.src != a.f.fobj(x) || cx.dst != a.g.fobj(x)) {
            rep.fail("component at " + C.objects[static_cast<size_t>(x)] + " has wrong endpoints");
            return rep;
        }
    }
    for (int x = 0; x < C.n(); ++x)
        for (int y = 0; y < C.n(); ++y)
            for (int k = 0; k < C.dim(x, y); ++k) {
                Mor f = C.basis_mor(x, y, k);
                Mor lhs = D.compose(a.comp[static_cast<size_t>(y)], a.f.apply(f));
                Mor rhs = D.compose(a.g.apply(f), a.comp[static_cast<size_t>(x)]);
                if (!mor_eq(lhs, rhs)) {
                    rep.fail("naturality square at " + C.label(x, y, k));
                    return rep;
                }
            }
    return rep;
}

NatTransf vcomp(const NatTransf& b, const NatTransf& a) {
    NatTransf r;
    r.f = a.f;
    r.g = b.g;
    for (size_t x = 0; x < a.comp.size(); ++x)
        r.comp.push_back(a.f.dst->compose(b.comp[x], a.comp[x]));
    return r;
}

NatTransf whisker_left(const KFunctor& h, const NatTransf& a) {
    NatTransf r;
    r.f = compose_functors(h, a.f);
    r.g = compose_functors(h, a.g);
    for (const auto& c : a.comp) r.comp.push_back(h.apply(c));
    return r;
}

NatTransf whisker_right(const NatTransf& a, const KFunctor& k) {
    NatTransf r;
    r.f = compose_functors(a.f, k);
    r.g = compose_functors(a.g, k);
    for (int x = 0; x < k.src->n(); ++x) r.comp.push_back(a.comp[static_cast<size_t>(k.fobj(x))]);
    return r;
}

bool nat_eq(const NatTransf& a, const NatTransf& b) {
    if (a.comp.size() != b.comp.size()) return false;
    for (size_t i = 0; i < a.comp.size(); ++i)
        if (!mor_eq(a.comp[i], b.comp[i])) return false;
    return true;
}

bool nat_is_identity(const NatTransf& a) {
    for (size_t x = 0; x < a.comp.size(); ++x) {
        const Mor& m = a.comp[x];
        if (m.src != m.dst) return false;
        if (!mor_eq(m, a.f.dst->id_mor(m.src))) return false;
    }
    return true;
}

std::optional<NatTransf> nat_inverse(const NatTransf& a) {
    NatTransf r;
    r.f = a.g;
    r.g = a.f;
    for (const auto& m : a.comp) {
        auto inv = mor_two_sided_inverse(*a.f.dst, m);
        if (!inv) return std::nullopt;
        r.comp.push_back(*inv);
    }
    return r;
}

std::optional<Mor> mor_two_sided_inverse(const FinKCat& c, const Mor& u) {
    int x = u.src, y = u.dst;
    int m = c.dim(y, x);
    int rows = c.dim(x, x) + c.dim(y, y);
    Mat A(c.field, rows, m);
    for (int k = 0; k < m; ++k) {
        Mor vk = c.basis_mor(y, x, k);
        Mor a = c.compose(vk, u);  // in End(x)
        Mor b = c.compose(u, vk);  // in End(y)
        for (int i = 0; i < c.dim(x, x); ++i) A.at(i, k) = a.c[static_cast<size_t>(i)];
        for (int i = 0; i < c.dim(y, y); ++i) A.at(c.dim(x, x) + i, k) = b.c[static_cast<size_t>(i)];
    }
    Mat rhs(c.field, rows, 1);
    Mor idx_ = c.id_mor(x), idy = c.id_mor(y);
    for (int i = 0; i < c.dim(x, x); ++i) rhs.at(i, 0) = idx_.c[static_cast<size_t>(i)];
    for (int i = 0; i < c.dim(y, y); ++i) rhs.at(c.dim(x, x) + i, 0) = idy.c[static_cast<size_t>(i)];
    LinSolve sol = solve_linear(A, rhs);
    if (!sol.ok) return std::nullopt;
    return Mor{y, x, sol.particular.col(0)};
}

std::optional<IsoWitness> find_iso(const FinKCat& c, int x, int y, std::uint64_t seed) {
    if (x == y) return IsoWitness{c.id_mor(x), c.id_mor(x)};
    int d = c.dim(x, y);
    if (d == 0 || d != c.dim(y, x)) return std::nullopt;

    auto attempt = [&](const Vec& coords) -> std::optional<IsoWitness> {
        if (vec_is_zero(coords)) return std::nullopt;
        Mor f{x, y, coords};
        auto g = mor_two_sided_inverse(c, f);
        if (!g) return std::nullopt;
        return IsoWitness{f, *g};
    };

    // canonical candidates first: basis vectors, then the all-ones vector
    for (int k = 0; k < d; ++k)
        if (auto w = attempt(vec_unit(c.field, d, k))) return w;
    {
        Vec ones(static_cast<size_t>(d), Scalar::one(c.field));
        if (auto w = attempt(ones)) return w;
    }
    // exhaustive for small finite search spaces
    bool exhaustive = false;
    if (!c.field.is_rationals()) {
        double total = 1;
        for (int i = 0; i < d; ++i) total *= c.field.p;
        if (total <= 4096) exhaustive = true;
    } else if (d <= 3) {
        exhaustive = true;  // small rational grid
    }
    if (exhaustive) {
        long radix = c.field.is_rationals() ? 5 : c.field.p;
        long total = 1;
        for (int i = 0; i < d; ++i) total *= radix;
        for (long t = 0; t < total; ++t) {
            long v = t;
            Vec coords = vec_zero(c.field, d);
            for (int i = 0; i < d; ++i) {
                long digit = v % radix;
                v /= radix;
                coords[static_cast<size_t>(i)] =
                    c.field.is_rationals() ? Scalar::of_int(c.field, digit - 2) : Scalar::of_int(c.field, digit);
            }
            if (auto w = attempt(coords)) return w;
        }
        return std::nullopt;
    }
    Rng rng(seed ^ 0x715fa5u);
    for (int t = 0; t < 64; ++t) {
        Vec coords = vec_zero(c.field, d);
        for (int i = 0; i < d; ++i) coords[static_cast<size_t>(i)] = rng.scalar(c.field);
        if (auto w = attempt(coords)) return w;
    }
    return std::nullopt;
}

/* ---- basic & local ---- */

namespace {

// left-multiplication matrix of an End(x) element
Mat left_mult(const FinKCat& c, int x, const Vec& u) {
    int m = c.dim(x, x);
    Mat L(c.field, m, m);
    Mor mu{x, x, u};
    for (int j = 0; j < m; ++j) {
        Mor r = c.compose(mu, c.basis_mor(x, x, j));
        for (int i = 0; i < m; ++i) L.at(i, j) = r.c[static_cast<size_t>(i)];
    }
    return L;
}

// minimal polynomial of a square matrix, monic, low degree first
std::vector<Scalar> min_poly(const Mat& L) {
    int m = L.rows;
    const FieldSpec& fs = L.fs;
    std::vector<Vec> powers;  // flattened m*m vectors: I, L, L^2, ...
    Mat cur = Mat::identity(fs, m);
    for (int k = 0;; ++k) {
        powers.push_back(cur.a);
        // does cur lie in the span of the previous powers?
        if (k > 0) {
            Mat A(fs, m * m, k);
            for (int j = 0; j < k; ++j)
                for (int i = 0; i < m * m; ++i) A.at(i, j) = powers[static_cast<size_t>(j)][static_cast<size_t>(i)];
            Mat b(fs, m * m, 1);
            for (int i = 0; i < m * m; ++i) b.at(i, 0) = powers.back()[static_cast<size_t>(i)];
            LinSolve sol = solve_linear(A, b);
            if (sol.ok) {
                std::vector<Scalar> coeffs;  // c0 + c1 x + ... + x^k
                for (int j = 0; j < k; ++j) coeffs.push_back(sol.particular.at(j, 0).neg());
                coeffs.push_back(Scalar::one(fs));
                return coeffs;
            }
        }
        cur = mat_mul(cur, L);
        if (k > m) throw Error("Internal", "minimal polynomial not found");
    }
}

Scalar poly_eval(const std::vector<Scalar>& cs, const Scalar& v) {
    Scalar acc = Scalar::zero(v.field());
    for (size_t i = cs.size(); i-- > 0;) acc = acc * v + cs[i];
    return acc;
}

// all roots of the polynomial in the ground field; ok=false when the root
// enumeration cannot be completed exactly
bool field_roots(const std::vector<Scalar>& cs, const FieldSpec& fs, std::vector<Scalar>& out) {
    out.clear();
    if (!fs.is_rationals()) {
        if (fs.p > 8192) return false;
        for (std::uint32_t v = 0; v < fs.p; ++v) {
            Scalar s = Scalar::of_int(fs, static_cast<long>(v));
            if (poly_eval(cs, s).is_zero()) out.push_back(s);
        }
        return true;
    }
    // rational roots p/q: p | a0, q | a_deg after clearing denominators
    mpz_class lcm_den(1);
    for (const auto& c : cs) lcm_den = lcm(lcm_den, c.rat().get_den());
    std::vector<mpz_class> ic;
    for (const auto& c : cs) ic.push_back(mpz_class(c.rat() * lcm_den));
    while (!ic.empty() && ic.front() == 0) {
        // factor out x: 0 is a root
        Scalar z = Scalar::zero(fs);
        if (out.empty() || !(out.back() == z)) out.push_back(z);
        ic.erase(ic.begin());
    }
    if (ic.size() <= 1) return true;
    auto divisors = [](mpz_class n, std::vector<mpz_class>& ds) -> bool {
        n = abs(n);
        if (n == 0) return false;
        if (n > 1000000000) return false;  // desk-scale guard
        unsigned long nv = n.get_ui();
        for (unsigned long d = 1; d * d <= nv; ++d)
            if (nv % d == 0) {
                ds.push_back(mpz_class(d));
                ds.push_back(mpz_class(nv / d));
            }
        return true;
    };
    std::vector<mpz_class> ps, qs;
    if (!divisors(ic.front(), ps) || !divisors(ic.back(), qs)) return false;
    for (const auto& pn : ps)
        for (const auto& qn : qs)
            for (int sign = -1; sign <= 1; sign += 2) {
                mpq_class cand(pn * sign, qn);
                cand.canonicalize();
                Scalar s = Scalar::from_mpq(fs, cand);
                if (poly_eval(cs, s).is_zero()) {
                    bool seen = false;
                    for (const auto& r : out)
                        if (r == s) seen = true;
                    if (!seen) out.push_back(s);
                }
            }
    return true;
}

}  // namespace

Report check_basic_local(const FinKCat& c) {
    Report rep;
    // locality of each End(x): certify a split local structure
    for (int x = 0; x < c.n(); ++x) {
        int m = c.dim(x, x);
        std::vector<Vec> rad_gens;
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) {
            Mat L = left_mult(c, x, vec_unit(c.field, m, k));
            auto mp = min_poly(L);
            std::vector<Scalar> roots;
            if (!field_roots(mp, c.field, roots)) {
                rep.fail("End(" + c.objects[static_cast<size_t>(x)] + "): eigenvalue enumeration for basis element " +
                         c.label(x, x, k) + " is out of reach");
                ok = false;
                break;
            }
            if (roots.size() >= 2) {
                rep.fail("End(" + c.objects[static_cast<size_t>(x)] + ") is not local: " + c.label(x, x, k) +
                         " has " + std::to_string(roots.size()) + " eigenvalues");
                ok = false;
                break;
            }
            if (roots.empty()) {
                rep.fail("End(" + c.objects[static_cast<size_t>(x)] + "): basis element " + c.label(x, x, k) +
                         " has no eigenvalue in " + c.field.str() + " (non-split; cannot certify locality)");
                ok = false;
                break;
            }
            Scalar lam = roots[0];
            Vec v = vec_unit(c.field, m, k);
            Mor idm = c.id_mor(x);
            for (int i = 0; i < m; ++i) v[static_cast<size_t>(i)] = v[static_cast<size_t>(i)] - lam * idm.c[static_cast<size_t>(i)];
            if (!vec_is_zero(v)) rad_gens.push_back(std::move(v));
        }
        if (!ok) continue;
        // R := span{u - lambda(u) 1} must be a codim-1 nilpotent subalgebra
        Mat R = rad_gens.empty() ? Mat(c.field, 0, m) : rref(Mat::from_rows(c.field, rad_gens)).m;
        int rdim = rank(R);
        if (rdim != m - 1) {
            rep.fail("End(" + c.objects[static_cast<size_t>(x)] + "): radical candidate has dimension " +
                     std::to_string(rdim) + ", expected " + std::to_string(m - 1));
            continue;
        }
        {
            std::vector<Vec> with_one;
            for (int i = 0; i < rdim; ++i) with_one.push_back(R.row(i));
            with_one.push_back(c.id_mor(x).c);
            if (rank(Mat::from_rows(c.field, with_one)) != rdim + 1) {
                rep.fail("End(" + c.objects[static_cast<size_t>(x)] + "): identity lies in the radical candidate");
                continue;
            }
        }
        // closure under multiplication and nilpotency
        auto mult = [&](const Vec& a, const Vec& b) { return c.compose(Mor{x, x, a}, Mor{x, x, b}).c; };
        std::vector<Vec> layer;
        for (int i = 0; i < rdim; ++i) layer.push_back(R.row(i));
        bool closed = true;
        for (int i = 0; i < rdim && closed; ++i)
            for (int j = 0; j < rdim && closed; ++j) {
                std::vector<Vec> ext;
                for (int t = 0; t < rdim; ++t) ext.push_back(R.row(t));
                ext.push_back(mult(R.row(i), R.row(j)));
                if (rank(Mat::from_rows(c.field, ext)) != rdim) closed = false;
            }
        if (!closed) {
            rep.fail("End(" + c.objects[static_cast<size_t>(x)] + "): radical candidate is not closed under multiplication");
            continue;
        }
        bool nilpotent = false;
        std::vector<Vec> cur = layer;
        for (int step = 0; step < m + 1; ++step) {
            bool all_zero = true;
            for (const auto& v : cur)
                if (!vec_is_zero(v)) all_zero = false;
            if (all_zero || cur.empty()) {
                nilpotent = true;
                break;
            }
            std::vector<Vec> next;
            for (const auto& a : cur)
                for (const auto& b : layer) next.push_back(mult(a, b));
            if (!next.empty()) {
                Rref rr = rref(Mat::from_rows(c.field, next));
                next.clear();
                for (int i = 0; i < rr.rank; ++i) next.push_back(rr.m.row(i));
            }
            cur = std::move(next);
        }
        if (!nilpotent)
            rep.fail("End(" + c.objects[static_cast<size_t>(x)] + "): radical candidate is not nilpotent");
    }
    // no two distinct objects isomorphic
    for (int x = 0; x < c.n(); ++x)
        for (int y = x + 1; y < c.n(); ++y)
            if (auto w = find_iso(c, x, y, 0x6a5el)) {
                rep.fail("objects " + c.objects[static_cast<size_t>(x)] + " and " + c.objects[static_cast<size_t>(y)] +
                         " are isomorphic via " + c.mor_str(w->fwd));
            }
    return rep;
}

}  // namespace grcat
