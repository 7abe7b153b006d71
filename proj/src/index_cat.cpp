#include "grcat/index_cat.hpp"

#include <algorithm>

namespace grcat {

int IndexCat::compose(int b, int a) const {
    if (!composable(b, a)) throw Error("SourceTargetMismatch", "index composition undefined");
    int r = comp[static_cast<size_t>(b)][static_cast<size_t>(a)];
    if (r < 0) throw Error("Internal", "missing composition table entry");
    return r;
}

std::vector<int> IndexCat::hom(int i, int j) const {
    std::vector<int> out;
    for (int m = 0; m < n_mor(); ++m)
        if (morphisms[static_cast<size_t>(m)].src == i && morphisms[static_cast<size_t>(m)].dst == j)
            out.push_back(m);
    return out;
}

int IndexCat::obj_index(const std::string& name) const {
    for (int i = 0; i < n_obj(); ++i)
        if (objects[static_cast<size_t>(i)] == name) return i;
    return -1;
}

int IndexCat::mor_index(const std::string& name) const {
    for (int i = 0; i < n_mor(); ++i)
        if (morphisms[static_cast<size_t>(i)].name == name) return i;
    return -1;
}

Report IndexCat::check() const {
    Report rep;
    for (int i = 0; i < n_obj(); ++i) {
        int e = id_of(i);
        if (morphisms[static_cast<size_t>(e)].src != i || morphisms[static_cast<size_t>(e)].dst != i) {
            rep.fail("identity of " + objects[static_cast<size_t>(i)] + " has wrong endpoints");
            return rep;
        }
    }
    for (int a = 0; a < n_mor(); ++a) {
        const auto& ma = morphisms[static_cast<size_t>(a)];
        if (compose(a, id_of(ma.src)) != a || compose(id_of(ma.dst), a) != a) {
            rep.fail("unit law fails at " + ma.name);
            return rep;
        }
    }
    for (int a = 0; a < n_mor(); ++a)
        for (int b = 0; b < n_mor(); ++b) {
            if (!composable(b, a)) continue;
            for (int c = 0; c < n_mor(); ++c) {
                if (!composable(c, b)) continue;
                if (compose(c, compose(b, a)) != compose(compose(c, b), a)) {
                    rep.fail("associativity fails at (" + morphisms[static_cast<size_t>(c)].name + ", " +
                             morphisms[static_cast<size_t>(b)].name + ", " + morphisms[static_cast<size_t>(a)].name + ")");
                    return rep;
                }
            }
        }
    return rep;
}

IndexCat free_on_acyclic_quiver(const IndexQuiver& q) {
    int nv = static_cast<int>(q.vertices.size());
    // cycle detection: paths longer than nv-1 cannot be simple
    {
        std::vector<std::vector<int>> adj(static_cast<size_t>(nv));
        for (const auto& a : q.arrows) adj[static_cast<size_t>(a.src)].push_back(a.dst);
        std::vector<int> color(static_cast<size_t>(nv), 0);
        auto dfs = [&](auto&& self, int v) -> bool {
            color[static_cast<size_t>(v)] = 1;
            for (int w : adj[static_cast<size_t>(v)]) {
                if (color[static_cast<size_t>(w)] == 1) return false;
                if (color[static_cast<size_t>(w)] == 0 && !self(self, w)) return false;
            }
            color[static_cast<size_t>(v)] = 2;
            return true;
        };
        for (int v = 0; v < nv; ++v)
            if (color[static_cast<size_t>(v)] == 0 && !dfs(dfs, v))
                throw Error("CyclicQuiver", "free category on a cyclic quiver has infinite Hom sets");
    }

    IndexCat I;
    I.objects = q.vertices;
    // enumerate paths by length then lexicographically on arrow indices
    std::vector<std::vector<int>> paths;  // arrow index sequences, application order
    std::vector<int> psrc, pdst;
    for (int v = 0; v < nv; ++v) {
        paths.push_back({});
        psrc.push_back(v);
        pdst.push_back(v);
    }
    size_t frontier_begin = 0;
    while (frontier_begin < paths.size()) {
        size_t frontier_end = paths.size();
        std::vector<std::vector<int>> fresh;
        std::vector<int> fsrc, fdst;
        for (size_t i = frontier_begin; i < frontier_end; ++i)
            for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a)
                if (q.arrows[static_cast<size_t>(a)].src == pdst[i]) {
                    auto ext = paths[i];
                    ext.push_back(a);
                    fresh.push_back(std::move(ext));
                    fsrc.push_back(psrc[i]);
                    fdst.push_back(q.arrows[static_cast<size_t>(a)].dst);
                }
        // sort fresh paths lexicographically for a stable morphism order
        std::vector<size_t> order(fresh.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fresh[a] < fresh[b]; });
        frontier_begin = frontier_end;
        for (size_t i : order) {
            paths.push_back(fresh[i]);
            psrc.push_back(fsrc[i]);
            pdst.push_back(fdst[i]);
        }
        if (fresh.empty()) break;
    }

    auto path_name = [&](const std::vector<int>& path, int src) {
        if (path.empty()) return "id(" + q.vertices[static_cast<size_t>(src)] + ")";
        std::string s;
        for (size_t i = path.size(); i-- > 0;) {
            s += q.arrows[static_cast<size_t>(path[i])].name;
            if (i) s += ".";
        }
        return s;
    };

    for (size_t i = 0; i < paths.size(); ++i)
        I.morphisms.push_back({path_name(paths[i], psrc[i]), psrc[i], pdst[i]});
    I.identities.resize(static_cast<size_t>(nv));
    for (int v = 0; v < nv; ++v) I.identities[static_cast<size_t>(v)] = v;  // empty paths come first

    I.comp.assign(paths.size(), std::vector<int>(paths.size(), -1));
    for (size_t a = 0; a < paths.size(); ++a)
        for (size_t b = 0; b < paths.size(); ++b) {
            if (pdst[a] != psrc[b]) continue;
            auto cat = paths[a];
            cat.insert(cat.end(), paths[b].begin(), paths[b].end());
            int found = -1;
            for (size_t c = 0; c < paths.size(); ++c)
                if (psrc[c] == psrc[a] && paths[c] == cat) {
                    found = static_cast<int>(c);
                    break;
                }
            if (found < 0) throw Error("Internal", "path concatenation missing");
            I.comp[b][a] = found;  // comp[b][a] = b∘a
        }
    return I;
}

IndexCat from_poset(const std::vector<std::string>& elements,
                    const std::vector<std::pair<int, int>>& leq) {
    int n = static_cast<int>(elements.size());
    std::vector<std::vector<bool>> le(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
    for (int i = 0; i < n; ++i) le[static_cast<size_t>(i)][static_cast<size_t>(i)] = true;
    for (auto [i, j] : leq) {
        if (i < 0 || i >= n || j < 0 || j >= n) throw Error("BadArgument", "poset pair out of range");
        le[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (le[static_cast<size_t>(i)][static_cast<size_t>(j)] && le[static_cast<size_t>(j)][static_cast<size_t>(i)] && i != j)
                throw Error("NotAPartialOrder", "antisymmetry fails at (" + elements[static_cast<size_t>(i)] + ", " +
                                                    elements[static_cast<size_t>(j)] + ")");
            if (le[static_cast<size_t>(i)][static_cast<size_t>(j)])
                for (int k = 0; k < n; ++k)
                    if (le[static_cast<size_t>(j)][static_cast<size_t>(k)] && !le[static_cast<size_t>(i)][static_cast<size_t>(k)])
                        throw Error("NotAPartialOrder", "relation is not transitively closed at (" +
                                                            elements[static_cast<size_t>(i)] + ", " +
                                                            elements[static_cast<size_t>(k)] + ")");
        }
    IndexCat I;
    I.objects = elements;
    std::vector<std::vector<int>> midx(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (le[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
                midx[static_cast<size_t>(i)][static_cast<size_t>(j)] = I.n_mor();
                std::string nm = i == j ? "id(" + elements[static_cast<size_t>(i)] + ")"
                                        : "le(" + elements[static_cast<size_t>(i)] + "," + elements[static_cast<size_t>(j)] + ")";
                I.morphisms.push_back({nm, i, j});
            }
    I.identities.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) I.identities[static_cast<size_t>(i)] = midx[static_cast<size_t>(i)][static_cast<size_t>(i)];
    I.comp.assign(I.morphisms.size(), std::vector<int>(I.morphisms.size(), -1));
    for (int a = 0; a < I.n_mor(); ++a)
        for (int b = 0; b < I.n_mor(); ++b)
            if (I.composable(b, a))
                I.comp[static_cast<size_t>(b)][static_cast<size_t>(a)] =
                    midx[static_cast<size_t>(I.morphisms[static_cast<size_t>(a)].src)]
                        [static_cast<size_t>(I.morphisms[static_cast<size_t>(b)].dst)];
    return I;
}

IndexCat from_monoid(const std::vector<std::string>& elements, int unit,
                     const std::vector<std::vector<int>>& table) {
    int n = static_cast<int>(elements.size());
    if (unit < 0 || unit >= n) throw Error("NotAMonoid", "unit index out of range");
    if (static_cast<int>(table.size()) != n) throw Error("NotAMonoid", "table has wrong shape");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw Error("NotAMonoid", "table has wrong shape");
        for (int v : row)
            if (v < 0 || v >= n) throw Error("NotAMonoid", "table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        if (table[static_cast<size_t>(unit)][static_cast<size_t>(a)] != a ||
            table[static_cast<size_t>(a)][static_cast<size_t>(unit)] != a)
            throw Error("NotAMonoid", "unit law fails at " + elements[static_cast<size_t>(a)]);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[static_cast<size_t>(table[static_cast<size_t>(a)][static_cast<size_t>(b)])][static_cast<size_t>(c)] !=
                    table[static_cast<size_t>(a)][static_cast<size_t>(table[static_cast<size_t>(b)][static_cast<size_t>(c)])])
                    throw Error("NotAMonoid", "associativity fails at (" + elements[static_cast<size_t>(a)] + "," +
                                                  elements[static_cast<size_t>(b)] + "," + elements[static_cast<size_t>(c)] + ")");
    IndexCat I;
    I.objects = {"*"};
    for (int a = 0; a < n; ++a) I.morphisms.push_back({elements[static_cast<size_t>(a)], 0, 0});
    I.identities = {unit};
    I.comp.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            I.comp[static_cast<size_t>(a)][static_cast<size_t>(b)] = table[static_cast<size_t>(a)][static_cast<size_t>(b)];
    return I;
}

IndexCat trivial_index() {
    IndexCat I;
    I.objects = {"*"};
    I.morphisms = {{"id(*)", 0, 0}};
    I.identities = {0};
    I.comp = {{0}};
    return I;
}

}  // namespace grcat
