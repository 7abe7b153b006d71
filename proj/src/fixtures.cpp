#include "grcat/fixtures.hpp"

#include <sstream>

#include "grcat/rng.hpp"

namespace grcat {

namespace {

std::string ex42_doc(int which) {
    std::ostringstream os;
    os << "[field]\nkind = Q\n\n";
    switch (which) {
        case 1:
            os << "[index I]\nkind = quiver\nobjects = 1 2\narrows = a:1->2\n\n";
            break;
        case 2:
            os << "[index I]\nkind = poset\nelements = 1 2 3\nleq = 1<=2 ; 2<=3 ; 1<=3\n\n";
            break;
        case 3:
            os << "[index I]\nkind = monoid\nelements = e s\nunit = e\ntable = s*s=e\n\n";
            break;
        case 4:
            os << "[index I]\nkind = quiver\nobjects = 1 2\narrows = a:1->2 b:1->2\n\n";
            break;
        default:
            throw Error("BadArgument", "ex-4.2 instance must be 1..4");
    }
    os << "[category k]\nkind = quiver\nobjects = *\n\n";
    os << "[colax X]\nindex = I\nkind = diagonal\ncategory = k\n";
    if (which == 1) {
        // the canonical morphism into the glued category, in file form: an
        // explicit target category, the P(i) functors and the phi components
        Workspace ws = load_document(os.str());
        ColaxPtr x = ws.colaxes.at("X");
        GrCategory g = grothendieck(*x);
        LeftTransformation can = canonical_morphism(g, diagonal(g.cat, x->index));
        os << "\n" << emit_category("G", *g.cat);
        os << "\n[colax DG]\nindex = I\nkind = diagonal\ncategory = G\n";
        for (int i = 0; i < x->index.n_obj(); ++i) {
            os << "\n[functor P" << i + 1 << "]\nsource = k\ntarget = G\nobjects = *->"
               << g.cat->objects[static_cast<size_t>(can.f[static_cast<size_t>(i)].fobj(0))] << "\n";
        }
        for (int a = 0; a < x->index.n_mor(); ++a) {
            const auto& m = x->index.morphisms[static_cast<size_t>(a)];
            if (a == x->index.id_of(m.src)) continue;
            const Mor& comp = can.psi[static_cast<size_t>(a)].comp[0];
            os << "\n[nat phi_" << m.name << "]\nsource = P" << m.src + 1 << "\ntarget = P" << m.dst + 1
               << "\ncomponents = * -> " << mor_expr(*g.cat, comp) << "\n";
        }
        os << "\n[transformation F]\nsource = X\ntarget = DG\nfunctors = 1->P1 ; 2->P2\npsi = a->phi_a\n";
    }
    return os.str();
}

// the zigzag category X(i) of the gluing example
void emit_x_cat(std::ostringstream& os, int i) {
    os << "[category X" << i << "]\nkind = quiver\nobjects =";
    for (int v = 1; v <= i; ++v) os << " " << v;
    os << "\narrows =";
    for (int j = 1; j < i; ++j) os << " a" << j << ":" << j << "->" << j + 1;
    for (int j = 1; j < i; ++j) os << " b" << j << ":" << j + 1 << "->" << j;
    os << "\nrelations =";
    bool first = true;
    auto put = [&](const std::string& r) {
        os << (first ? " " : " ; ") << r;
        first = false;
    };
    for (int j = 1; j + 1 <= i - 1; ++j) {
        put("a" + std::to_string(j + 1) + "*a" + std::to_string(j));
        put("b" + std::to_string(j) + "*b" + std::to_string(j + 1));
        put("a" + std::to_string(j) + "*b" + std::to_string(j) + " + -1*b" + std::to_string(j + 1) + "*a" +
            std::to_string(j + 1));
    }
    put("a1*b1*a1");
    put("b" + std::to_string(i - 1) + "*a" + std::to_string(i - 1) + "*b" + std::to_string(i - 1));
    os << "\n\n";
}

// the cyclic category X'(i) with all paths of length i+1 zero
void emit_xp_cat(std::ostringstream& os, int i) {
    os << "[category Xp" << i << "]\nkind = quiver\nobjects =";
    for (int v = 1; v <= i; ++v) os << " " << v;
    os << "\narrows =";
    for (int j = 1; j <= i; ++j) os << " g" << j << ":" << j << "->" << (j == i ? 1 : j + 1);
    os << "\nrelations =";
    for (int j = 1; j <= i; ++j) {
        os << (j == 1 ? " " : " ; ");
        // g_{j+i} * ... * g_{j+1} * g_j, indices mod i in 1..i
        for (int k = i; k >= 0; --k) {
            int idx = ((j + k - 1) % i) + 1;
            os << "g" << idx;
            if (k) os << "*";
        }
    }
    os << "\nlength_cap = " << (i + 2) << "\n\n";
}

std::string ex86_doc(int n) {
    if (n < 3) throw Error("BadArgument", "the gluing example needs n >= 3");
    std::ostringstream os;
    os << "[field]\nkind = Q\n\n";
    os << "[index I]\nkind = quiver\nobjects =";
    for (int i = 2; i <= n; ++i) os << " " << i;
    os << "\narrows =";
    for (int i = 2; i < n; ++i) os << " q" << i << ":" << i << "->" << i + 1;
    os << "\n\n";
    for (int i = 2; i <= n; ++i) emit_x_cat(os, i);
    for (int i = 2; i <= n; ++i) emit_xp_cat(os, i);
    // inclusion functors X(i) -> X(i+1)
    for (int i = 2; i < n; ++i) {
        os << "[functor Xq" << i << "]\nsource = X" << i << "\ntarget = X" << i + 1 << "\nobjects =";
        for (int v = 1; v <= i; ++v) os << " " << v << "->" << v;
        os << "\narrows =";
        for (int j = 1; j < i; ++j)
            os << (j == 1 ? " " : " ; ") << "a" << j << " -> a" << j;
        for (int j = 1; j < i; ++j) os << " ; b" << j << " -> b" << j;
        os << "\n\n";
    }
    // winding functors X'(i) -> X'(i+1)
    for (int i = 2; i < n; ++i) {
        os << "[functor Xpq" << i << "]\nsource = Xp" << i << "\ntarget = Xp" << i + 1 << "\nobjects = 1->1";
        for (int v = 2; v <= i; ++v) os << " " << v << "->" << v + 1;
        os << "\narrows = g1 -> g2*g1";
        for (int j = 2; j <= i; ++j) os << " ; g" << j << " -> g" << j + 1;
        os << "\n\n";
    }
    os << "[colax X]\nindex = I\nkind = strict\nfibers =";
    for (int i = 2; i <= n; ++i) os << (i == 2 ? " " : " ; ") << i << "->X" << i;
    os << "\narrows =";
    for (int i = 2; i < n; ++i) os << (i == 2 ? " " : " ; ") << "q" << i << "->Xq" << i;
    os << "\n\n";
    os << "[colax Xp]\nindex = I\nkind = strict\nfibers =";
    for (int i = 2; i <= n; ++i) os << (i == 2 ? " " : " ; ") << i << "->Xp" << i;
    os << "\narrows =";
    for (int i = 2; i < n; ++i) os << (i == 2 ? " " : " ; ") << "q" << i << "->Xpq" << i;
    os << "\n\n";
    // tilting complexes T(i)_j and the delta generators
    for (int i = 2; i <= n; ++i) {
        os << "[complex T" << i << "_1]\nbase = X" << i << "\nterms = 0: 1\n\n";
        for (int j = 2; j <= i; ++j) {
            os << "[complex T" << i << "_" << j << "]\nbase = X" << i << "\nterms =";
            int len = i - j;  // degrees 0..len carry P_2..P_{len+2}
            for (int d = 0; d <= len; ++d) os << (d == 0 ? " " : " ; ") << d << ": " << d + 2;
            os << "\n";
            for (int d = 0; d < len; ++d) os << "diff " << d << " = [a" << d + 2 << "]\n";
            os << "\n";
        }
        for (int j = 1; j <= i; ++j) {
            os << "[chainmap d" << i << "_" << j << "]\n";
            if (j == 1) {
                os << "source = T" << i << "_1\ntarget = T" << i << "_2\ndeg 0 = [a1]\n\n";
            } else if (j == i) {
                os << "source = T" << i << "_" << i << "\ntarget = T" << i << "_1\ndeg 0 = [b1]\n\n";
            } else {
                os << "source = T" << i << "_" << j << "\ntarget = T" << i << "_" << j + 1 << "\n";
                int len = i - j - 1;  // target length
                for (int d = 0; d <= len; ++d) os << "deg " << d << " = [id(" << d + 2 << ")]\n";
                os << "\n";
            }
        }
    }
    os << "[tilting T]\ncolax = X\n";
    for (int i = 2; i <= n; ++i) {
        os << "fiber " << i << " =";
        for (int j = 1; j <= i; ++j) os << " T" << i << "_" << j;
        os << "\ngens " << i << " =";
        for (int j = 1; j <= i; ++j) os << " d" << i << "_" << j;
        os << "\n";
    }
    for (int i = 2; i < n; ++i) {
        os << "act q" << i << " = T" << i << "_1->T" << i + 1 << "_1";
        for (int j = 2; j <= i; ++j) os << " ; T" << i << "_" << j << "->T" << i + 1 << "_" << j + 1;
        os << "\n";
        os << "actgen q" << i << " = d" << i << "_1 -> d" << i + 1 << "_2*d" << i + 1 << "_1";
        for (int j = 2; j <= i; ++j) os << " ; d" << i << "_" << j << " -> d" << i + 1 << "_" << j + 1;
        os << "\n";
        os << "rho q" << i << " = T" << i << "_1:id";
        for (int j = 2; j <= i; ++j) os << " ; T" << i << "_" << j << ":id";
        os << "\n";
    }
    os << "\n[equivalence E]\nsource = Xp\ntilting = T\n";
    for (int i = 2; i <= n; ++i) {
        os << "objects " << i << " =";
        for (int j = 1; j <= i; ++j) os << (j == 1 ? " " : " ; ") << j << "->T" << i << "_" << j;
        os << "\narrows " << i << " =";
        for (int j = 1; j <= i; ++j) os << (j == 1 ? " " : " ; ") << "g" << j << " -> d" << i << "_" << j;
        os << "\n";
    }
    return os.str();
}

std::string thm85_doc(char instance) {
    std::ostringstream os;
    if (instance == 'c')
        os << "[field]\nkind = F\np = 2\n\n";
    else
        os << "[field]\nkind = Q\n\n";
    switch (instance) {
        case 'a':
            os << "[index I]\nkind = quiver\nobjects = 1 2\narrows = q:1->2\n\n";
            break;
        case 'b':
            os << "[index I]\nkind = poset\nelements = 1 2 3\nleq = 1<=2 ; 2<=3 ; 1<=3\n\n";
            break;
        case 'c':
            os << "[index I]\nkind = monoid\nelements = e s\nunit = e\ntable = s*s=e\n\n";
            break;
        default:
            throw Error("BadArgument", "thm-8.5 instance must be a, b or c");
    }
    os << "[category A]\nkind = quiver\nobjects = 1 2\narrows = al:1->2\n\n";
    os << "[category Ap]\nkind = quiver\nobjects = 1 2\narrows = ga:2->1\n\n";
    os << "[colax X]\nindex = I\nkind = diagonal\ncategory = A\n\n";
    os << "[colax Xp]\nindex = I\nkind = diagonal\ncategory = Ap\n\n";
    os << "[complex T1]\nbase = A\nterms = -1: 1 ; 0: 2\ndiff -1 = [al]\n\n";
    os << "[complex T2]\nbase = A\nterms = 0: 2\n\n";
    os << "[chainmap dg]\nsource = T2\ntarget = T1\ndeg 0 = [id(2)]\n\n";
    os << "[tilting T]\ncolax = X\n";
    std::vector<std::string> mors;
    if (instance == 'a') mors = {"q"};
    if (instance == 'b') mors = {"le(1,2)", "le(2,3)", "le(1,3)"};
    if (instance == 'c') mors = {"s"};
    for (int i = 0; i < (instance == 'b' ? 3 : (instance == 'a' ? 2 : 1)); ++i) {
        std::string obj = instance == 'c' ? "*" : std::to_string(i + 1);
        os << "fiber " << obj << " = T1 T2\ngens " << obj << " = dg\n";
    }
    for (const auto& m : mors) {
        os << "act " << m << " = T1->T1 ; T2->T2\n";
        os << "actgen " << m << " = dg -> dg\n";
        os << "rho " << m << " = T1:id ; T2:id\n";
    }
    os << "\n[equivalence E]\nsource = Xp\ntilting = T\n";
    for (int i = 0; i < (instance == 'b' ? 3 : (instance == 'a' ? 2 : 1)); ++i) {
        std::string obj = instance == 'c' ? "*" : std::to_string(i + 1);
        os << "objects " << obj << " = 1->T1 ; 2->T2\narrows " << obj << " = ga -> dg\n";
    }
    return os.str();
}

}  // namespace

std::vector<std::string> fixture_names() {
    return {"ex-4.2-1", "ex-4.2-2", "ex-4.2-3", "ex-4.2-4", "ex-8.6", "thm-8.5-a", "thm-8.5-b", "thm-8.5-c"};
}

std::string fixture_document(const std::string& name, int n) {
    if (name == "ex-4.2-1") return ex42_doc(1);
    if (name == "ex-4.2-2") return ex42_doc(2);
    if (name == "ex-4.2-3") return ex42_doc(3);
    if (name == "ex-4.2-4") return ex42_doc(4);
    if (name == "ex-8.6") return ex86_doc(n);
    if (name == "thm-8.5-a") return thm85_doc('a');
    if (name == "thm-8.5-b") return thm85_doc('b');
    if (name == "thm-8.5-c") return thm85_doc('c');
    throw Error("BadArgument", "unknown fixture " + name);
}

/* ---- randomized corpus ---- */

ColaxPtr random_colax_f5(std::uint64_t seed, int idx, bool twist) {
    Rng rng = Rng(seed).fork(static_cast<std::uint64_t>(idx));
    FieldSpec f5 = FieldSpec::prime(5);

    // small fiber category: random acyclic quiver with random zero relations
    QuiverPresentation p;
    int nv = 1 + static_cast<int>(rng.below(3));
    for (int v = 0; v < nv; ++v) p.vertices.push_back("v" + std::to_string(v + 1));
    int na = nv == 1 ? 0 : static_cast<int>(rng.below(3));
    for (int a = 0; a < na; ++a) {
        int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(nv - 1)));
        int d = s + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(nv - s - 1)));
        p.arrows.push_back({"r" + std::to_string(a + 1), s, d});
    }
    // kill random composable length-2 paths so End rings stay local
    for (size_t a = 0; a < p.arrows.size(); ++a)
        for (size_t b = 0; b < p.arrows.size(); ++b)
            if (p.arrows[a].dst == p.arrows[b].src && rng.below(2) == 0)
                p.relations.push_back({{Scalar::one(f5), {static_cast<int>(a), static_cast<int>(b)}}});
    CatPtr c = build_category(p, f5);

    // index category with at most four morphisms
    IndexCat I;
    switch (rng.below(4)) {
        case 0: I = trivial_index(); break;
        case 1: {
            IndexQuiver q;
            q.vertices = {"1", "2"};
            q.arrows = {{"a", 0, 1}};
            I = free_on_acyclic_quiver(q);
            break;
        }
        case 2: {
            IndexQuiver q;
            q.vertices = {"1", "2"};
            q.arrows = {{"a", 0, 1}, {"b", 0, 1}};
            I = free_on_acyclic_quiver(q);
            break;
        }
        default:
            I = from_monoid({"e", "s"}, 0, {{0, 1}, {1, 0}});
            break;
    }

    // strict action by scaling automorphisms (one scalar per arrow of the fiber)
    auto scaling = [&](bool involutive) {
        KFunctor f = identity_functor(c);
        std::vector<Scalar> cs;
        for (size_t a = 0; a < p.arrows.size(); ++a) {
            Scalar s = rng.nonzero_scalar(f5);
            if (involutive && !(s * s).is_one()) s = rng.below(2) ? Scalar::of_int(f5, 1) : Scalar::of_int(f5, 4);
            cs.push_back(s);
        }
        for (int x = 0; x < c->n(); ++x)
            for (int y = 0; y < c->n(); ++y) {
                Mat& m = f.hom_mat(x, y);
                for (int k = 0; k < c->dim(x, y); ++k) {
                    // scale a path label by the product over its arrows
                    Scalar s = Scalar::one(f5);
                    std::string lab = c->label(x, y, k);
                    if (lab.rfind("id(", 0) != 0) {
                        std::string cur;
                        for (char ch : lab + ".") {
                            if (ch == '.') {
                                for (size_t a = 0; a < p.arrows.size(); ++a)
                                    if (p.arrows[a].name == cur) s = s * cs[a];
                                cur.clear();
                            } else
                                cur += ch;
                        }
                    }
                    m.at(k, k) = s;
                }
            }
        return f;
    };

    std::vector<CatPtr> fibers(static_cast<size_t>(I.n_obj()), c);
    std::vector<KFunctor> arrows(static_cast<size_t>(I.n_mor()), identity_functor(c));
    // assign scalings to the generating morphisms and induce composites
    std::map<std::string, KFunctor> gen;
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        if (a == I.id_of(m.src)) continue;
        if (m.name.find('*') != std::string::npos) continue;
        gen[m.name] = scaling(m.name == "s");
    }
    for (int a = 0; a < I.n_mor(); ++a) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        if (a == I.id_of(m.src)) continue;
        auto it = gen.find(m.name);
        if (it != gen.end()) {
            arrows[static_cast<size_t>(a)] = it->second;
            continue;
        }
        // free-category composites: product of the generators in the name
        KFunctor f = identity_functor(c);
        std::string cur;
        for (char ch : m.name + ".") {
            if (ch == '.') {
                f = compose_functors(gen.at(cur), f);
                cur.clear();
            } else
                cur += ch;
        }
        arrows[static_cast<size_t>(a)] = f;
    }
    ColaxPtr strict = make_strict(I, std::move(fibers), std::move(arrows));
    if (!twist) return strict;

    // invertible eta/theta twist by one scalar per index morphism
    std::vector<NatTransf> taus;
    for (int a = 0; a < I.n_mor(); ++a) {
        NatTransf t = identity_nat(strict->at(a));
        Scalar s = rng.nonzero_scalar(f5);
        for (auto& comp : t.comp) comp = mor_scale(s, comp);
        taus.push_back(std::move(t));
    }
    return twist_colax(strict, taus);
}

CatPtr extend_with_isolated_object(const CatPtr& c) {
    auto e = std::make_shared<FinKCat>();
    std::vector<std::string> objs = c->objects;
    objs.push_back("zz");
    e->init(c->field, objs);
    int n = c->n();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) e->set_basis(x, y, c->basis_labels(x, y));
    e->set_basis(n, n, {"id(zz)"});
    for (int x = 0; x < n; ++x) e->set_identity(x, c->id_mor(x).c);
    e->set_identity(n, vec_unit(c->field, 1, 0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int f = 0; f < c->dim(x, y); ++f)
                    for (int g = 0; g < c->dim(y, z); ++g)
                        e->set_comp(x, y, z, f, g, c->comp_basis(x, y, z, f, g));
    e->set_comp(n, n, n, 0, 0, vec_unit(c->field, 1, 0));
    e->finish();
    return e;
}

}  // namespace grcat
