#include "grcat/textio.hpp"

#include <algorithm>
#include <sstream>

namespace grcat {

namespace {

struct ParseErr : Error {
    ParseErr(int line, const std::string& msg)
        : Error("ParseError", "line " + std::to_string(line) + ": " + msg) {}
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else
            cur += ch;
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

// "lhs -> rhs" or "lhs:rhs"
bool split_pair(const std::string& s, const std::string& sep, std::string* lhs, std::string* rhs) {
    size_t p = s.find(sep);
    if (p == std::string::npos) return false;
    *lhs = trim(s.substr(0, p));
    *rhs = trim(s.substr(p + sep.size()));
    return true;
}

bool is_scalar_token(const std::string& t) {
    if (t.empty()) return false;
    size_t i = t[0] == '-' ? 1 : 0;
    if (i >= t.size()) return false;
    bool slash = false;
    for (; i < t.size(); ++i) {
        if (t[i] == '/') {
            if (slash) return false;
            slash = true;
            continue;
        }
        if (!isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
}

Scalar parse_scalar(const FieldSpec& fs, const std::string& t, int line) {
    if (!is_scalar_token(t)) throw ParseErr(line, "bad scalar '" + t + "'");
    size_t slash = t.find('/');
    long num = std::stol(slash == std::string::npos ? t : t.substr(0, slash));
    long den = slash == std::string::npos ? 1 : std::stol(t.substr(slash + 1));
    if (fs.is_rationals()) {
        Scalar s = Scalar::rational(num, den);
        return s;
    }
    if (den != 1) return Scalar::from_mpq(fs, mpq_class(num, den));
    return Scalar::of_int(fs, num);
}

struct RawSection {
    std::string kind;
    std::vector<std::string> args;
    int line = 0;
    std::vector<std::pair<int, std::pair<std::string, std::string>>> kv;  // line, key, value
};

std::vector<RawSection> tokenize(const std::string& text) {
    std::vector<RawSection> out;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseErr(lineno, "unterminated section header");
            auto toks = split_ws(line.substr(1, line.size() - 2));
            if (toks.empty()) throw ParseErr(lineno, "empty section header");
            RawSection s;
            s.kind = toks[0];
            s.args.assign(toks.begin() + 1, toks.end());
            s.line = lineno;
            out.push_back(std::move(s));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseErr(lineno, "expected key = value");
        if (out.empty()) throw ParseErr(lineno, "key outside any section");
        out.back().kv.push_back({lineno, {trim(line.substr(0, eq)), trim(line.substr(eq + 1))}});
    }
    return out;
}

const std::string* get_kv(const RawSection& s, const std::string& key) {
    for (const auto& [ln, kv] : s.kv)
        if (kv.first == key) return &kv.second;
    return nullptr;
}

/* splits "g*f" at the unique '*' with valid names on both sides; labels may
 * themselves contain '*' */
template <class Pred>
std::pair<std::string, std::string> split_composite(const std::string& lhs, Pred valid, int line) {
    std::vector<std::pair<std::string, std::string>> hits;
    for (size_t i = 0; i < lhs.size(); ++i) {
        if (lhs[i] != '*') continue;
        std::string g = trim(lhs.substr(0, i)), f = trim(lhs.substr(i + 1));
        if (valid(g) && valid(f)) hits.push_back({g, f});
    }
    if (hits.empty()) throw ParseErr(line, "cannot resolve composite pair " + lhs);
    if (hits.size() > 1) throw ParseErr(line, "ambiguous composite pair " + lhs);
    return hits[0];
}

int kv_line(const RawSection& s, const std::string& key) {
    for (const auto& [ln, kv] : s.kv)
        if (kv.first == key) return ln;
    return s.line;
}

std::string need_kv(const RawSection& s, const std::string& key) {
    const std::string* v = get_kv(s, key);
    if (!v) throw ParseErr(s.line, "section [" + s.kind + "] misses key '" + key + "'");
    return *v;
}

}  // namespace

std::string scalar_str(const Scalar& s) { return s.str(); }

namespace {

bool atom_valid(const FinKCat& c, const std::string& tok) {
    if (c.find_label(tok)) return true;
    return tok.rfind("id(", 0) == 0 && tok.size() > 4 && tok.back() == ')' &&
           c.obj_index(tok.substr(3, tok.size() - 4)) >= 0;
}

/* Splits a '*'-composition into atoms; labels may contain '*' themselves, so
 * the longest valid atom is preferred, with backtracking. */
bool tokenize_atoms(const FinKCat& c, const std::string& term, size_t pos,
                    std::vector<std::string>& acc) {
    if (pos >= term.size()) return !acc.empty();
    std::vector<size_t> cuts;
    for (size_t q = pos; q < term.size(); ++q)
        if (term[q] == '*') cuts.push_back(q);
    cuts.push_back(term.size());
    for (size_t ci = cuts.size(); ci-- > 0;) {  // longest candidate first
        size_t q = cuts[ci];
        std::string cand = trim(term.substr(pos, q - pos));
        if (!atom_valid(c, cand)) continue;
        acc.push_back(cand);
        if (q >= term.size()) return true;
        if (tokenize_atoms(c, term, q + 1, acc)) return true;
        acc.pop_back();
    }
    return false;
}

}  // namespace

Mor parse_mor_expr(const FinKCat& c, const std::string& text, int src_hint, int dst_hint) {
    std::string t = trim(text);
    auto atom = [&](const std::string& tok) -> Mor {
        auto loc = c.find_label(tok);
        if (loc) return c.basis_mor((*loc)[0], (*loc)[1], (*loc)[2]);
        if (tok.rfind("id(", 0) == 0 && tok.back() == ')') {
            std::string obj = tok.substr(3, tok.size() - 4);
            int x = c.obj_index(obj);
            if (x < 0) throw Error("UnresolvedReference", "unknown object " + obj);
            return c.id_mor(x);
        }
        throw Error("UnresolvedReference", "unknown basis label " + tok);
    };
    if (t == "0") {
        if (src_hint < 0 || dst_hint < 0)
            throw Error("ParseError", "zero morphism needs endpoint context");
        return c.zero_mor(src_hint, dst_hint);
    }
    Mor acc;
    bool first = true;
    for (const std::string& term : split(t, '+')) {
        if (term.empty()) throw Error("ParseError", "empty term in '" + text + "'");
        std::string body = term;
        Scalar coeff = Scalar::one(c.field);
        size_t star = term.find('*');
        if (star != std::string::npos && is_scalar_token(trim(term.substr(0, star)))) {
            coeff = parse_scalar(c.field, trim(term.substr(0, star)), 0);
            body = trim(term.substr(star + 1));
        }
        std::vector<std::string> toks;
        if (!tokenize_atoms(c, body, 0, toks))
            throw Error("UnresolvedReference", "unknown basis label " + body);
        // rightmost atom applies first
        Mor m = atom(toks.back());
        for (size_t i = toks.size() - 1; i-- > 0;) m = c.compose(atom(toks[i]), m);
        m = mor_scale(coeff, m);
        if (first) {
            acc = m;
            first = false;
        } else
            acc = mor_add(acc, m);
    }
    return acc;
}

std::string mor_expr(const FinKCat& c, const Mor& m) {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < c.dim(m.src, m.dst); ++k) {
        const Scalar& s = m.c[static_cast<size_t>(k)];
        if (s.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (!s.is_one()) os << s.str() << "*";
        os << c.label(m.src, m.dst, k);
    }
    if (first) os << "0";
    return os.str();
}

/* ---- emission ---- */

std::string emit_field(const FieldSpec& fs) {
    std::ostringstream os;
    os << "[field]\n";
    if (fs.is_rationals())
        os << "kind = Q\n";
    else
        os << "kind = F\np = " << fs.p << "\n";
    return os.str();
}

std::string emit_index(const std::string& name, const IndexCat& i) {
    std::ostringstream os;
    os << "[index " << name << "]\nkind = explicit\nobjects =";
    for (const auto& o : i.objects) os << " " << o;
    os << "\nmorphisms =";
    for (const auto& m : i.morphisms)
        os << " " << m.name << ":" << i.objects[static_cast<size_t>(m.src)] << "->"
           << i.objects[static_cast<size_t>(m.dst)];
    os << "\nidentities =";
    for (int o = 0; o < i.n_obj(); ++o)
        os << " " << i.objects[static_cast<size_t>(o)] << ":" << i.morphisms[static_cast<size_t>(i.id_of(o))].name;
    os << "\ncomp =";
    bool first = true;
    for (int b = 0; b < i.n_mor(); ++b)
        for (int a = 0; a < i.n_mor(); ++a) {
            if (!i.composable(b, a)) continue;
            os << (first ? " " : " ; ") << i.morphisms[static_cast<size_t>(b)].name << "*"
               << i.morphisms[static_cast<size_t>(a)].name << "="
               << i.morphisms[static_cast<size_t>(i.compose(b, a))].name;
            first = false;
        }
    os << "\n";
    return os.str();
}

std::string emit_presentation(const std::string& name, const QuiverPresentation& p, const FieldSpec&) {
    std::ostringstream os;
    os << "[category " << name << "]\nkind = quiver\nobjects =";
    for (const auto& v : p.vertices) os << " " << v;
    os << "\narrows =";
    for (const auto& a : p.arrows)
        os << " " << a.name << ":" << p.vertices[static_cast<size_t>(a.src)] << "->"
           << p.vertices[static_cast<size_t>(a.dst)];
    os << "\n";
    if (!p.relations.empty()) {
        os << "relations =";
        bool first = true;
        for (const auto& rel : p.relations) {
            os << (first ? " " : " ; ");
            first = false;
            bool ft = true;
            for (const auto& term : rel) {
                if (!ft) os << " + ";
                ft = false;
                if (!term.coeff.is_one()) os << term.coeff.str() << "*";
                for (size_t i = term.path.size(); i-- > 0;) {
                    os << p.arrows[static_cast<size_t>(term.path[i])].name;
                    if (i) os << "*";
                }
            }
        }
        os << "\n";
    }
    if (p.length_cap > 0) os << "length_cap = " << p.length_cap << "\n";
    return os.str();
}

std::string emit_category(const std::string& name, const FinKCat& c) {
    std::ostringstream os;
    os << "[category " << name << "]\nkind = explicit\nobjects =";
    for (const auto& o : c.objects) os << " " << o;
    os << "\nbasis =";
    for (int x = 0; x < c.n(); ++x)
        for (int y = 0; y < c.n(); ++y)
            for (int k = 0; k < c.dim(x, y); ++k)
                os << " " << c.label(x, y, k) << ":" << c.objects[static_cast<size_t>(x)] << "->"
                   << c.objects[static_cast<size_t>(y)];
    os << "\n";
    for (int x = 0; x < c.n(); ++x)
        os << "identity " << c.objects[static_cast<size_t>(x)] << " = " << mor_expr(c, c.id_mor(x)) << "\n";
    std::ostringstream comp;
    bool first = true;
    for (int x = 0; x < c.n(); ++x)
        for (int y = 0; y < c.n(); ++y)
            for (int z = 0; z < c.n(); ++z)
                for (int f = 0; f < c.dim(x, y); ++f)
                    for (int g = 0; g < c.dim(y, z); ++g) {
                        Mor r{x, z, c.comp_basis(x, y, z, f, g)};
                        if (mor_is_zero(r)) continue;
                        comp << (first ? " " : " ; ") << c.label(y, z, g) << "*" << c.label(x, y, f) << " -> "
                             << mor_expr(c, r);
                        first = false;
                    }
    os << "comp =" << comp.str() << "\n";
    return os.str();
}

std::string emit_functor(const std::string& name, const std::string& src, const std::string& dst,
                         const KFunctor& f) {
    std::ostringstream os;
    os << "[functor " << name << "]\nsource = " << src << "\ntarget = " << dst << "\nobjects =";
    for (int x = 0; x < f.src->n(); ++x)
        os << " " << f.src->objects[static_cast<size_t>(x)] << "->"
           << f.dst->objects[static_cast<size_t>(f.fobj(x))];
    os << "\nimages =";
    bool first = true;
    for (int x = 0; x < f.src->n(); ++x)
        for (int y = 0; y < f.src->n(); ++y)
            for (int k = 0; k < f.src->dim(x, y); ++k) {
                Mor img{f.fobj(x), f.fobj(y), f.hom_mat(x, y).col(k)};
                os << (first ? " " : " ; ") << f.src->label(x, y, k) << " -> " << mor_expr(*f.dst, img);
                first = false;
            }
    os << "\n";
    return os.str();
}

std::string emit_complex(const std::string& name, const std::string& base, const ProjComplex& u) {
    std::ostringstream os;
    os << "[complex " << name << "]\nbase = " << base << "\n";
    os << "terms =";
    bool first = true;
    for (int n = u.lo; n <= u.hi(); ++n) {
        os << (first ? " " : " ; ") << n << ":";
        first = false;
        for (int x : u.term(n)) os << " " << u.base->objects[static_cast<size_t>(x)];
    }
    os << "\n";
    for (int n = u.lo; n < u.hi(); ++n) {
        PMat d = u.d(n);
        if (pmat_is_zero(d)) continue;
        os << "diff " << n << " = [";
        for (size_t r = 0; r < d.dst.size(); ++r) {
            if (r) os << "; ";
            for (size_t c = 0; c < d.src.size(); ++c) {
                if (c) os << ", ";
                os << mor_expr(*u.base, d.at(r, c));
            }
        }
        os << "]\n";
    }
    return os.str();
}

std::string emit_chainmap(const std::string& name, const std::string& src, const std::string& dst,
                          const ChainMap& f) {
    std::ostringstream os;
    os << "[chainmap " << name << "]\nsource = " << src << "\ntarget = " << dst << "\n";
    for (int n = f.src.lo; n <= f.src.hi(); ++n) {
        PMat p = f.at_degree(n);
        if (pmat_is_zero(p) || p.src.empty() || p.dst.empty()) continue;
        os << "deg " << n << " = [";
        for (size_t r = 0; r < p.dst.size(); ++r) {
            if (r) os << "; ";
            for (size_t c = 0; c < p.src.size(); ++c) {
                if (c) os << ", ";
                os << mor_expr(*f.src.base, p.at(r, c));
            }
        }
        os << "]\n";
    }
    return os.str();
}

/* ---- loading ---- */

namespace {

PMat parse_pmat(const CatPtr& base, const std::string& text, const std::vector<int>& src,
                const std::vector<int>& dst, int line) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw ParseErr(line, "matrix must be bracketed");
    t = t.substr(1, t.size() - 2);
    PMat m = PMat::zero(base, src, dst);
    if (trim(t).empty()) {
        if (!src.empty() && !dst.empty()) throw ParseErr(line, "matrix shape mismatch");
        return m;
    }
    auto rows = split(t, ';');
    if (rows.size() != dst.size()) throw ParseErr(line, "matrix row count mismatch");
    for (size_t r = 0; r < rows.size(); ++r) {
        auto cols = split(rows[r], ',');
        if (cols.size() != src.size()) throw ParseErr(line, "matrix column count mismatch");
        for (size_t c = 0; c < cols.size(); ++c) {
            Mor e = parse_mor_expr(*base, cols[c], src[c], dst[r]);
            if (e.src != src[c] || e.dst != dst[r]) throw ParseErr(line, "matrix entry has wrong endpoints");
            m.at(r, c) = std::move(e);
        }
    }
    return m;
}

struct Loader {
    Workspace ws;

    CatPtr category(const std::string& name, int line) {
        auto it = ws.categories.find(name);
        if (it == ws.categories.end()) throw ParseErr(line, "unknown category " + name);
        return it->second;
    }
    const IndexCat& index(const std::string& name, int line) {
        auto it = ws.indexes.find(name);
        if (it == ws.indexes.end()) throw ParseErr(line, "unknown index category " + name);
        return it->second;
    }
    const KFunctor& functor(const std::string& name, int line) {
        auto it = ws.functors.find(name);
        if (it == ws.functors.end()) throw ParseErr(line, "unknown functor " + name);
        return it->second;
    }
    const ProjComplex& complex(const std::string& name, int line) {
        auto it = ws.complexes.find(name);
        if (it == ws.complexes.end()) throw ParseErr(line, "unknown complex " + name);
        return it->second;
    }
    const ChainMap& chainmap(const std::string& name, int line) {
        auto it = ws.chainmaps.find(name);
        if (it == ws.chainmaps.end()) throw ParseErr(line, "unknown chain map " + name);
        return it->second;
    }
    ColaxPtr colax(const std::string& name, int line) {
        auto it = ws.colaxes.find(name);
        if (it == ws.colaxes.end()) throw ParseErr(line, "unknown colax functor " + name);
        return it->second;
    }

    // chain-map expression: lin comb of compositions of named chain maps
    ChainMap parse_chain_expr(const std::string& text, int line) {
        std::string t = trim(text);
        ChainMap acc;
        bool first = true;
        for (const std::string& term : split(t, '+')) {
            auto toks = split(term, '*');
            size_t k = 0;
            std::optional<Scalar> coeff;
            if (is_scalar_token(toks[0])) {
                coeff = parse_scalar(ws.field, toks[0], line);
                k = 1;
            }
            if (k >= toks.size()) throw ParseErr(line, "chain expression term without map");
            ChainMap m = chainmap(toks.back(), line);
            for (size_t i = toks.size() - 1; i-- > k;)
                m = compose_chain_maps(chainmap(toks[i], line), m);
            if (coeff) m = chain_scale(*coeff, m);
            if (first) {
                acc = std::move(m);
                first = false;
            } else
                acc = chain_add(acc, m);
        }
        return acc;
    }

    void do_field(const RawSection& s) {
        std::string kind = need_kv(s, "kind");
        if (kind == "Q" || kind == "rationals")
            ws.field = FieldSpec::rationals();
        else if (kind == "F" || kind == "prime")
            ws.field = FieldSpec::prime(static_cast<std::uint32_t>(std::stoul(need_kv(s, "p"))));
        else
            throw ParseErr(s.line, "unknown field kind " + kind);
    }

    void do_index(const RawSection& s) {
        if (s.args.empty()) throw ParseErr(s.line, "index section needs a name");
        std::string kind = need_kv(s, "kind");
        IndexCat ic;
        if (kind == "quiver") {
            IndexQuiver q;
            q.vertices = split_ws(need_kv(s, "objects"));
            for (const auto& tok : split_ws(need_kv(s, "arrows"))) {
                std::string nm, ends;
                if (!split_pair(tok, ":", &nm, &ends)) throw ParseErr(s.line, "bad arrow " + tok);
                std::string a, b;
                if (!split_pair(ends, "->", &a, &b)) throw ParseErr(s.line, "bad arrow " + tok);
                int sa = -1, sb = -1;
                for (size_t i = 0; i < q.vertices.size(); ++i) {
                    if (q.vertices[i] == a) sa = static_cast<int>(i);
                    if (q.vertices[i] == b) sb = static_cast<int>(i);
                }
                if (sa < 0 || sb < 0) throw ParseErr(s.line, "arrow endpoint not declared: " + tok);
                q.arrows.push_back({nm, sa, sb});
            }
            ic = free_on_acyclic_quiver(q);
        } else if (kind == "poset") {
            auto elems = split_ws(need_kv(s, "elements"));
            std::vector<std::pair<int, int>> leq;
            for (const auto& ent : split(need_kv(s, "leq"), ';')) {
                if (ent.empty()) continue;
                std::string a, b;
                if (!split_pair(ent, "<=", &a, &b)) throw ParseErr(s.line, "bad leq entry " + ent);
                int ia = -1, ib = -1;
                for (size_t i = 0; i < elems.size(); ++i) {
                    if (elems[i] == a) ia = static_cast<int>(i);
                    if (elems[i] == b) ib = static_cast<int>(i);
                }
                if (ia < 0 || ib < 0) throw ParseErr(s.line, "unknown poset element in " + ent);
                leq.push_back({ia, ib});
            }
            ic = from_poset(elems, leq);
        } else if (kind == "monoid") {
            auto elems = split_ws(need_kv(s, "elements"));
            std::string unit = need_kv(s, "unit");
            int ui = -1;
            for (size_t i = 0; i < elems.size(); ++i)
                if (elems[i] == unit) ui = static_cast<int>(i);
            if (ui < 0) throw ParseErr(s.line, "unknown unit " + unit);
            int n = static_cast<int>(elems.size());
            std::vector<std::vector<int>> table(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
            for (int a = 0; a < n; ++a) {
                table[static_cast<size_t>(ui)][static_cast<size_t>(a)] = a;
                table[static_cast<size_t>(a)][static_cast<size_t>(ui)] = a;
            }
            const std::string* tb = get_kv(s, "table");
            if (tb)
                for (const auto& ent : split(*tb, ';')) {
                    if (ent.empty()) continue;
                    std::string lhs, rhs;
                    if (!split_pair(ent, "=", &lhs, &rhs)) throw ParseErr(s.line, "bad table entry " + ent);
                    auto ab = split(lhs, '*');
                    if (ab.size() != 2) throw ParseErr(s.line, "bad table entry " + ent);
                    int ia = -1, ib = -1, ir = -1;
                    for (size_t i = 0; i < elems.size(); ++i) {
                        if (elems[i] == ab[0]) ia = static_cast<int>(i);
                        if (elems[i] == ab[1]) ib = static_cast<int>(i);
                        if (elems[i] == trim(rhs)) ir = static_cast<int>(i);
                    }
                    if (ia < 0 || ib < 0 || ir < 0) throw ParseErr(s.line, "unknown element in " + ent);
                    table[static_cast<size_t>(ia)][static_cast<size_t>(ib)] = ir;
                }
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (table[static_cast<size_t>(a)][static_cast<size_t>(b)] < 0)
                        throw ParseErr(s.line, "monoid table incomplete at " + elems[static_cast<size_t>(a)] +
                                                   "*" + elems[static_cast<size_t>(b)]);
            ic = from_monoid(elems, ui, table);
        } else if (kind == "explicit") {
            ic.objects = split_ws(need_kv(s, "objects"));
            for (const auto& tok : split_ws(need_kv(s, "morphisms"))) {
                std::string nm, ends, a, b;
                if (!split_pair(tok, ":", &nm, &ends) || !split_pair(ends, "->", &a, &b))
                    throw ParseErr(s.line, "bad morphism " + tok);
                int ia = -1, ib = -1;
                for (size_t i = 0; i < ic.objects.size(); ++i) {
                    if (ic.objects[i] == a) ia = static_cast<int>(i);
                    if (ic.objects[i] == b) ib = static_cast<int>(i);
                }
                if (ia < 0 || ib < 0) throw ParseErr(s.line, "unknown object in " + tok);
                ic.morphisms.push_back({nm, ia, ib});
            }
            ic.identities.assign(ic.objects.size(), -1);
            for (const auto& tok : split_ws(need_kv(s, "identities"))) {
                std::string o, m;
                if (!split_pair(tok, ":", &o, &m)) throw ParseErr(s.line, "bad identity " + tok);
                int io = ic.obj_index(o), im = ic.mor_index(m);
                if (io < 0 || im < 0) throw ParseErr(s.line, "unknown name in " + tok);
                ic.identities[static_cast<size_t>(io)] = im;
            }
            ic.comp.assign(ic.morphisms.size(), std::vector<int>(ic.morphisms.size(), -1));
            for (const auto& ent : split(need_kv(s, "comp"), ';')) {
                if (ent.empty()) continue;
                std::string lhs, rhs;
                if (!split_pair(ent, "=", &lhs, &rhs)) throw ParseErr(s.line, "bad comp entry " + ent);
                auto [g, f] = split_composite(lhs, [&](const std::string& n) { return ic.mor_index(n) >= 0; },
                                              s.line);
                int ib = ic.mor_index(g), ia = ic.mor_index(f), ir = ic.mor_index(trim(rhs));
                if (ia < 0 || ib < 0 || ir < 0) throw ParseErr(s.line, "unknown morphism in " + ent);
                ic.comp[static_cast<size_t>(ib)][static_cast<size_t>(ia)] = ir;
            }
            Report cr = ic.check();
            if (!cr.pass) throw ParseErr(s.line, "index category axioms fail: " + cr.str());
        } else
            throw ParseErr(s.line, "unknown index kind " + kind);
        ws.indexes[s.args[0]] = std::move(ic);
        ws.order.push_back("index " + s.args[0]);
    }

    void do_category(const RawSection& s) {
        if (s.args.empty()) throw ParseErr(s.line, "category section needs a name");
        const std::string* kindp = get_kv(s, "kind");
        std::string kind = kindp ? *kindp : "quiver";
        if (kind == "quiver") {
            QuiverPresentation p;
            p.vertices = split_ws(need_kv(s, "objects"));
            const std::string* arrs = get_kv(s, "arrows");
            if (arrs)
                for (const auto& tok : split_ws(*arrs)) {
                    std::string nm, ends, a, b;
                    if (!split_pair(tok, ":", &nm, &ends) || !split_pair(ends, "->", &a, &b))
                        throw ParseErr(s.line, "bad arrow " + tok);
                    int ia = -1, ib = -1;
                    for (size_t i = 0; i < p.vertices.size(); ++i) {
                        if (p.vertices[i] == a) ia = static_cast<int>(i);
                        if (p.vertices[i] == b) ib = static_cast<int>(i);
                    }
                    if (ia < 0 || ib < 0) throw ParseErr(s.line, "unknown vertex in " + tok);
                    p.arrows.push_back({nm, ia, ib});
                }
            const std::string* rels = get_kv(s, "relations");
            if (rels) {
                int rl = kv_line(s, "relations");
                for (const auto& rel : split(*rels, ';')) {
                    if (rel.empty()) continue;
                    PathComb pc;
                    for (const std::string& term : split(rel, '+')) {
                        auto toks = split(term, '*');
                        size_t k = 0;
                        Scalar coeff = Scalar::one(ws.field);
                        if (is_scalar_token(toks[0])) {
                            coeff = parse_scalar(ws.field, toks[0], rl);
                            k = 1;
                        }
                        Path path;
                        // tokens are written leftmost-last-applied; store application order
                        for (size_t i = toks.size(); i-- > k;) {
                            int ai = -1;
                            for (size_t a = 0; a < p.arrows.size(); ++a)
                                if (p.arrows[a].name == toks[i]) ai = static_cast<int>(a);
                            if (ai < 0) throw ParseErr(rl, "relation references unknown arrow " + toks[i]);
                            path.push_back(ai);
                        }
                        pc.push_back({coeff, std::move(path)});
                    }
                    p.relations.push_back(std::move(pc));
                }
            }
            const std::string* cap = get_kv(s, "length_cap");
            if (cap) p.length_cap = std::stoi(*cap);
            ws.categories[s.args[0]] = build_category(p, ws.field);
            ws.presentations[s.args[0]] = std::move(p);
        } else if (kind == "explicit") {
            auto cat = std::make_shared<FinKCat>();
            cat->init(ws.field, split_ws(need_kv(s, "objects")));
            struct B {
                std::string label;
                int x, y;
            };
            std::vector<B> basis;
            std::vector<std::vector<std::vector<std::string>>> labels(
                static_cast<size_t>(cat->n()),
                std::vector<std::vector<std::string>>(static_cast<size_t>(cat->n())));
            for (const auto& tok : split_ws(need_kv(s, "basis"))) {
                std::string nm, ends, a, b;
                if (!split_pair(tok, ":", &nm, &ends) || !split_pair(ends, "->", &a, &b))
                    throw ParseErr(s.line, "bad basis entry " + tok);
                int ia = cat->obj_index(a), ib = cat->obj_index(b);
                if (ia < 0 || ib < 0) throw ParseErr(s.line, "unknown object in " + tok);
                labels[static_cast<size_t>(ia)][static_cast<size_t>(ib)].push_back(nm);
            }
            for (int x = 0; x < cat->n(); ++x)
                for (int y = 0; y < cat->n(); ++y)
                    cat->set_basis(x, y, labels[static_cast<size_t>(x)][static_cast<size_t>(y)]);
            cat->finish();
            for (const auto& [ln, kv] : s.kv) {
                if (kv.first.rfind("identity ", 0) != 0) continue;
                std::string obj = trim(kv.first.substr(9));
                int x = cat->obj_index(obj);
                if (x < 0) throw ParseErr(ln, "unknown object " + obj);
                Mor m = parse_mor_expr(*cat, kv.second, x, x);
                cat->set_identity(x, m.c);
            }
            const std::string* comp = get_kv(s, "comp");
            if (comp)
                for (const auto& ent : split(*comp, ';')) {
                    if (ent.empty()) continue;
                    std::string lhs, rhs;
                    if (!split_pair(ent, "->", &lhs, &rhs)) throw ParseErr(s.line, "bad comp entry " + ent);
                    auto [g, f] = split_composite(
                        lhs, [&](const std::string& n) { return cat->find_label(n).has_value(); }, s.line);
                    auto gl = cat->find_label(g), fl = cat->find_label(f);
                    if (!gl || !fl) throw ParseErr(s.line, "unknown basis label in " + ent);
                    Mor r = parse_mor_expr(*cat, rhs, (*fl)[0], (*gl)[1]);
                    cat->set_comp((*fl)[0], (*fl)[1], (*gl)[1], (*fl)[2], (*gl)[2], r.c);
                }
            cat->finish();
            Report cr = cat->check();
            if (!cr.pass) throw ParseErr(s.line, "category axioms fail: " + cr.str());
            ws.categories[s.args[0]] = cat;
        } else
            throw ParseErr(s.line, "unknown category kind " + kind);
        ws.order.push_back("category " + s.args[0]);
    }

    void do_functor(const RawSection& s) {
        if (s.args.empty()) throw ParseErr(s.line, "functor section needs a name");
        CatPtr src = category(need_kv(s, "source"), s.line);
        CatPtr dst = category(need_kv(s, "target"), s.line);
        KFunctor f;
        f.src = src;
        f.dst = dst;
        f.obj_map.assign(static_cast<size_t>(src->n()), -1);
        for (const auto& tok : split_ws(need_kv(s, "objects"))) {
            std::string a, b;
            if (!split_pair(tok, "->", &a, &b)) throw ParseErr(s.line, "bad object pair " + tok);
            int ia = src->obj_index(a), ib = dst->obj_index(b);
            if (ia < 0 || ib < 0) throw ParseErr(s.line, "unknown object in " + tok);
            f.obj_map[static_cast<size_t>(ia)] = ib;
        }
        for (int x = 0; x < src->n(); ++x)
            if (f.obj_map[static_cast<size_t>(x)] < 0)
                throw ParseErr(s.line, "object map incomplete at " + src->objects[static_cast<size_t>(x)]);
        std::map<std::string, Mor> arrow_img;
        const std::string* arrs = get_kv(s, "arrows");
        if (arrs)
            for (const auto& ent : split(*arrs, ';')) {
                if (ent.empty()) continue;
                std::string nm, expr;
                if (!split_pair(ent, "->", &nm, &expr)) throw ParseErr(s.line, "bad arrow image " + ent);
                auto loc = src->find_label(nm);
                if (!loc) throw ParseErr(s.line, "unknown source arrow " + nm);
                arrow_img[nm] = parse_mor_expr(*dst, expr, f.fobj((*loc)[0]), f.fobj((*loc)[1]));
            }
        auto eval_label = [&](const std::string& lab, int x) -> Mor {
            if (lab.rfind("id(", 0) == 0) return dst->id_mor(f.fobj(x));
            Mor m;
            bool first = true;
            auto parts = split(lab, '.');
            for (size_t i = parts.size(); i-- > 0;) {
                auto it = arrow_img.find(parts[i]);
                if (it == arrow_img.end())
                    throw ParseErr(s.line, "no image given for arrow " + parts[i]);
                if (first) {
                    m = it->second;
                    first = false;
                } else
                    m = dst->compose(it->second, m);
            }
            return m;
        };
        for (int x = 0; x < src->n(); ++x)
            for (int y = 0; y < src->n(); ++y) {
                Mat mm(dst->field, dst->dim(f.fobj(x), f.fobj(y)), src->dim(x, y));
                for (int k = 0; k < src->dim(x, y); ++k) {
                    Mor img = eval_label(src->label(x, y, k), x);
                    if (img.src != f.fobj(x) || img.dst != f.fobj(y))
                        throw ParseErr(s.line, "arrow image endpoints mismatch at " + src->label(x, y, k));
                    for (int r = 0; r < mm.rows; ++r) mm.at(r, k) = img.c[static_cast<size_t>(r)];
                }
                f.hom_mats.push_back(std::move(mm));
            }
        Report fr = check_functor(f);
        if (!fr.pass) throw ParseErr(s.line, "functor axioms fail: " + fr.str());
        ws.functors[s.args[0]] = std::move(f);
        ws.order.push_back("functor " + s.args[0]);
    }

    void do_nat(const RawSection& s) {
        if (s.args.empty()) throw ParseErr(s.line, "nat section needs a name");
        NatTransf n;
        n.f = functor(need_kv(s, "source"), s.line);
        n.g = functor(need_kv(s, "target"), s.line);
        n.comp.resize(static_cast<size_t>(n.f.src->n()));
        for (const auto& ent : split(need_kv(s, "components"), ';')) {
            if (ent.empty()) continue;
            std::string obj, expr;
            if (!split_pair(ent, "->", &obj, &expr)) throw ParseErr(s.line, "bad component " + ent);
            int x = n.f.src->obj_index(obj);
            if (x < 0) throw ParseErr(s.line, "unknown object " + obj);
            n.comp[static_cast<size_t>(x)] =
                parse_mor_expr(*n.f.dst, expr, n.f.fobj(x), n.g.fobj(x));
        }
        Report nr = check_nat(n);
        if (!nr.pass) throw ParseErr(s.line, "naturality fails: " + nr.str());
        ws.nats[s.args[0]] = std::move(n);
        ws.order.push_back("nat " + s.args[0]);
    }

    KFunctor colax_arrow_functor(const IndexCat& I, int a,
                                 const std::map<std::string, KFunctor>& named,
                                 const std::vector<CatPtr>& fibers, int line) {
        const auto& m = I.morphisms[static_cast<size_t>(a)];
        auto it = named.find(m.name);
        if (it != named.end()) return it->second;
        if (a == I.id_of(m.src) && m.src == m.dst) return identity_functor(fibers[static_cast<size_t>(m.src)]);
        // free-quiver composite names decompose on '.'
        auto parts = split(m.name, '.');
        if (parts.size() > 1) {
            KFunctor f;
            bool first = true;
            for (size_t i = parts.size(); i-- > 0;) {
                auto jt = named.find(parts[i]);
                if (jt == named.end()) throw ParseErr(line, "no functor for generator " + parts[i]);
                f = first ? jt->second : compose_functors(jt->second, f);
                first = false;
            }
            return f;
        }
        throw ParseErr(line, "no functor given for morphism " + m.name);
    }

    void do_colax(const RawSection& s) {
        if (s.args.empty()) throw ParseErr(s.line, "colax section needs a name");
        const IndexCat& I = index(need_kv(s, "index"), s.line);
        std::string kind = need_kv(s, "kind");
        if (kind == "diagonal") {
            CatPtr c = category(need_kv(s, "category"), s.line);
            ws.colaxes[s.args[0]] = diagonal(c, I);
        } else if (kind == "strict") {
            std::vector<CatPtr> fibers(static_cast<size_t>(I.n_obj()));
            for (const auto& tok : split(need_kv(s, "fibers"), ';')) {
                if (tok.empty()) continue;
                std::string o, c;
                if (!split_pair(tok, "->", &o, &c)) throw ParseErr(s.line, "bad fiber entry " + tok);
                int io = I.obj_index(o);
                if (io < 0) throw ParseErr(s.line, "unknown index object " + o);
                fibers[static_cast<size_t>(io)] = category(c, s.line);
            }
            for (const auto& f : fibers)
                if (!f) throw ParseErr(s.line, "missing fiber");
            std::map<std::string, KFunctor> named;
            const std::string* arrs = get_kv(s, "arrows");
            if (arrs)
                for (const auto& tok : split(*arrs, ';')) {
                    if (tok.empty()) continue;
                    std::string a, fn;
                    if (!split_pair(tok, "->", &a, &fn)) throw ParseErr(s.line, "bad arrow entry " + tok);
                    named[a] = functor(fn, s.line);
                }
            std::vector<KFunctor> arrows;
            for (int a = 0; a < I.n_mor(); ++a)
                arrows.push_back(colax_arrow_functor(I, a, named, fibers, s.line));
            ws.colaxes[s.args[0]] = make_strict(I, std::move(fibers), std::move(arrows));
        } else
            throw ParseErr(s.line, "unknown colax kind " + kind);
        ws.order.push_back("colax " + s.args[0]);
    }

    void do_transformation(const RawSection& s) {
        if (s.args.empty()) throw ParseErr(s.line, "transformation section needs a name");
        LeftTransformation t;
        t.src = colax(need_kv(s, "source"), s.line);
        t.dst = colax(need_kv(s, "target"), s.line);
        const IndexCat& I = t.src->index;
        t.f.resize(static_cast<size_t>(I.n_obj()));
        for (const auto& tok : split(need_kv(s, "functors"), ';')) {
            if (tok.empty()) continue;
            std::string o, fn;
            if (!split_pair(tok, "->", &o, &fn)) throw ParseErr(s.line, "bad functor entry " + tok);
            int io = I.obj_index(o);
            if (io < 0) throw ParseErr(s.line, "unknown index object " + o);
            t.f[static_cast<size_t>(io)] = functor(fn, s.line);
        }
        std::map<std::string, std::string> psi_named;
        const std::string* psis = get_kv(s, "psi");
        if (psis)
            for (const auto& tok : split(*psis, ';')) {
                if (tok.empty()) continue;
                std::string a, nn;
                if (!split_pair(tok, "->", &a, &nn)) throw ParseErr(s.line, "bad psi entry " + tok);
                psi_named[a] = nn;
            }
        for (int a = 0; a < I.n_mor(); ++a) {
            const auto& m = I.morphisms[static_cast<size_t>(a)];
            auto it = psi_named.find(m.name);
            if (it != psi_named.end() && it->second != "id") {
                auto nt = ws.nats.find(it->second);
                if (nt == ws.nats.end()) throw ParseErr(s.line, "unknown nat " + it->second);
                t.psi.push_back(nt->second);
                continue;
            }
            NatTransf psi;
            psi.f = compose_functors(t.dst->at(a), t.f[static_cast<size_t>(m.src)]);
            psi.g = compose_functors(t.f[static_cast<size_t>(m.dst)], t.src->at(a));
            for (int x = 0; x < t.src->fiber[static_cast<size_t>(m.src)]->n(); ++x) {
                if (psi.f.fobj(x) != psi.g.fobj(x))
                    throw ParseErr(s.line, "identity psi invalid: squares do not commute on objects");
                psi.comp.push_back(t.dst->fiber[static_cast<size_t>(m.dst)]->id_mor(psi.f.fobj(x)));
            }
            t.psi.push_back(std::move(psi));
        }
        ws.transformations[s.args[0]] = std::move(t);
        ws.order.push_back("transformation " + s.args[0]);
    }

    void do_complex(const RawSection& s) {
        if (s.args.empty()) throw ParseErr(s.line, "complex section needs a name");
        CatPtr base = category(need_kv(s, "base"), s.line);
        std::vector<int> degs;
        std::vector<std::vector<int>> terms;
        for (const auto& ent : split(need_kv(s, "terms"), ';')) {
            if (ent.empty()) continue;
            std::string d, objs;
            if (!split_pair(ent, ":", &d, &objs)) throw ParseErr(s.line, "bad term entry " + ent);
            degs.push_back(std::stoi(d));
            std::vector<int> t;
            for (const auto& o : split_ws(objs)) {
                int io = base->obj_index(o);
                if (io < 0) throw ParseErr(s.line, "unknown object " + o);
                t.push_back(io);
            }
            terms.push_back(std::move(t));
        }
        if (degs.empty()) {
            ProjComplex u;
            u.base = base;
            ws.complexes[s.args[0]] = std::move(u);
            ws.order.push_back("complex " + s.args[0]);
            return;
        }
        int lo = *std::min_element(degs.begin(), degs.end());
        int hi = *std::max_element(degs.begin(), degs.end());
        std::vector<std::vector<int>> full(static_cast<size_t>(hi - lo + 1));
        for (size_t i = 0; i < degs.size(); ++i) full[static_cast<size_t>(degs[i] - lo)] = terms[i];
        std::vector<PMat> diffs;
        for (int n = lo; n < hi; ++n)
            diffs.push_back(PMat::zero(base, full[static_cast<size_t>(n - lo)], full[static_cast<size_t>(n + 1 - lo)]));
        for (const auto& [ln, kv] : s.kv) {
            if (kv.first.rfind("diff ", 0) != 0) continue;
            int d = std::stoi(kv.first.substr(5));
            if (d < lo || d >= hi) throw ParseErr(ln, "diff degree outside term window");
            diffs[static_cast<size_t>(d - lo)] = parse_pmat(base, kv.second, full[static_cast<size_t>(d - lo)],
                                                            full[static_cast<size_t>(d + 1 - lo)], ln);
        }
        ws.complexes[s.args[0]] = make_complex(base, lo, std::move(full), std::move(diffs));
        ws.order.push_back("complex " + s.args[0]);
    }

    void do_chainmap(const RawSection& s) {
        if (s.args.empty()) throw ParseErr(s.line, "chainmap section needs a name");
        const ProjComplex& src = complex(need_kv(s, "source"), s.line);
        ProjComplex dst = complex(need_kv(s, "target"), s.line);
        const std::string* sh = get_kv(s, "shift");
        if (sh) dst = shift_complex(dst, std::stoi(*sh));
        ChainMap f = zero_chain_map(src, dst);
        for (const auto& [ln, kv] : s.kv) {
            if (kv.first.rfind("deg ", 0) != 0) continue;
            int d = std::stoi(kv.first.substr(4));
            if (d < src.lo || d > src.hi()) throw ParseErr(ln, "component degree outside source window");
            f.comp[static_cast<size_t>(d - src.lo)] =
                parse_pmat(src.base, kv.second, src.term(d), dst.term(d), ln);
        }
        if (!is_chain_map(f)) throw ParseErr(s.line, "components do not commute with the differentials");
        ws.chainmaps[s.args[0]] = std::move(f);
        ws.order.push_back("chainmap " + s.args[0]);
    }

    void do_tilting(const RawSection& s) {
        if (s.args.empty()) throw ParseErr(s.line, "tilting section needs a name");
        TiltingColaxData td;
        td.x = colax(need_kv(s, "colax"), s.line);
        const IndexCat& I = td.x->index;
        td.fibers.resize(static_cast<size_t>(I.n_obj()));
        td.gens.resize(static_cast<size_t>(I.n_obj()));
        td.act_obj.assign(static_cast<size_t>(I.n_mor()), {});
        td.act_gen.resize(static_cast<size_t>(I.n_mor()));
        td.rho.resize(static_cast<size_t>(I.n_mor()));

        for (const auto& [ln, kv] : s.kv) {
            if (kv.first.rfind("fiber ", 0) == 0) {
                int io = I.obj_index(trim(kv.first.substr(6)));
                if (io < 0) throw ParseErr(ln, "unknown index object in " + kv.first);
                TiltingSubcategoryData& t = td.fibers[static_cast<size_t>(io)];
                t.base = td.x->fiber[static_cast<size_t>(io)];
                for (const auto& nm : split_ws(kv.second)) {
                    t.names.push_back(nm);
                    t.objects.push_back(complex(nm, ln));
                }
            } else if (kv.first.rfind("gens ", 0) == 0) {
                int io = I.obj_index(trim(kv.first.substr(5)));
                if (io < 0) throw ParseErr(ln, "unknown index object in " + kv.first);
                for (const auto& nm : split_ws(kv.second))
                    td.gens[static_cast<size_t>(io)].push_back({nm, chainmap(nm, ln)});
            }
        }
        // arrow action and rho on listed morphisms
        std::map<std::string, std::vector<int>> named_act;
        std::map<std::string, std::map<std::string, ChainMap>> named_actgen;
        std::map<std::string, std::map<std::string, std::string>> named_rho;
        for (const auto& [ln, kv] : s.kv) {
            if (kv.first.rfind("act ", 0) == 0 && kv.first.rfind("actgen ", 0) != 0) {
                std::string aname = trim(kv.first.substr(4));
                int a = I.mor_index(aname);
                if (a < 0) throw ParseErr(ln, "unknown index morphism " + aname);
                const auto& mi = I.morphisms[static_cast<size_t>(a)];
                const TiltingSubcategoryData& ti = td.fibers[static_cast<size_t>(mi.src)];
                const TiltingSubcategoryData& tj = td.fibers[static_cast<size_t>(mi.dst)];
                std::vector<int> amap(ti.objects.size(), -1);
                for (const auto& tok : split(kv.second, ';')) {
                    if (tok.empty()) continue;
                    std::string u, v;
                    if (!split_pair(tok, "->", &u, &v)) throw ParseErr(ln, "bad act entry " + tok);
                    int iu = ti.find(u), iv = tj.find(v);
                    if (iu < 0 || iv < 0) throw ParseErr(ln, "unknown tilting object in " + tok);
                    amap[static_cast<size_t>(iu)] = iv;
                }
                for (int v : amap)
                    if (v < 0) throw ParseErr(ln, "act map incomplete for " + aname);
                named_act[aname] = std::move(amap);
            } else if (kv.first.rfind("actgen ", 0) == 0) {
                std::string aname = trim(kv.first.substr(7));
                if (I.mor_index(aname) < 0) throw ParseErr(ln, "unknown index morphism " + aname);
                for (const auto& tok : split(kv.second, ';')) {
                    if (tok.empty()) continue;
                    std::string g, expr;
                    if (!split_pair(tok, "->", &g, &expr)) throw ParseErr(ln, "bad actgen entry " + tok);
                    named_actgen[aname][g] = parse_chain_expr(expr, ln);
                }
            } else if (kv.first.rfind("rho ", 0) == 0) {
                std::string aname = trim(kv.first.substr(4));
                if (I.mor_index(aname) < 0) throw ParseErr(ln, "unknown index morphism " + aname);
                for (const auto& tok : split(kv.second, ';')) {
                    if (tok.empty()) continue;
                    std::string u, w;
                    if (!split_pair(tok, ":", &u, &w)) throw ParseErr(ln, "bad rho entry " + tok);
                    named_rho[aname][u] = w;
                }
            }
        }

        // resolve every morphism: identities, listed, then free-quiver composites
        std::vector<bool> done(static_cast<size_t>(I.n_mor()), false);
        auto resolve_identity = [&](int a) {
            const auto& m = I.morphisms[static_cast<size_t>(a)];
            const TiltingSubcategoryData& ti = td.fibers[static_cast<size_t>(m.src)];
            std::vector<int> amap;
            for (size_t u = 0; u < ti.objects.size(); ++u) amap.push_back(static_cast<int>(u));
            td.act_obj[static_cast<size_t>(a)] = amap;
            for (size_t u = 0; u < ti.objects.size(); ++u) {
                ProjComplex img = map_complex(td.x->at(a), ti.objects[u]);
                if (!complex_eq(img, ti.objects[u]))
                    throw ParseErr(s.line, "identity rho invalid at " + ti.names[u]);
                ChainMap r = identity_chain_map(img);
                td.rho[static_cast<size_t>(a)].push_back(std::move(r));
            }
            for (const auto& [g, gm] : td.gens[static_cast<size_t>(m.src)])
                td.act_gen[static_cast<size_t>(a)][g] = gm;
            done[static_cast<size_t>(a)] = true;
        };
        auto resolve_listed = [&](int a) {
            const auto& m = I.morphisms[static_cast<size_t>(a)];
            auto it = named_act.find(m.name);
            if (it == named_act.end()) return false;
            const TiltingSubcategoryData& ti = td.fibers[static_cast<size_t>(m.src)];
            const TiltingSubcategoryData& tj = td.fibers[static_cast<size_t>(m.dst)];
            td.act_obj[static_cast<size_t>(a)] = it->second;
            for (size_t u = 0; u < ti.objects.size(); ++u) {
                ProjComplex img = map_complex(td.x->at(a), ti.objects[u]);
                const ProjComplex& tgt = tj.objects[static_cast<size_t>(it->second[u])];
                std::string spec = "id";
                auto rit = named_rho.find(m.name);
                if (rit != named_rho.end()) {
                    auto uit = rit->second.find(ti.names[u]);
                    if (uit != rit->second.end()) spec = uit->second;
                }
                if (spec == "id") {
                    if (!complex_eq(img, tgt))
                        throw ParseErr(s.line, "rho id invalid: image of " + ti.names[u] +
                                                   " is not literally the target complex");
                    td.rho[static_cast<size_t>(a)].push_back(identity_chain_map(img));
                } else if (spec == "zero") {
                    td.rho[static_cast<size_t>(a)].push_back(zero_chain_map(img, tgt));
                } else {
                    td.rho[static_cast<size_t>(a)].push_back(chainmap(spec, s.line));
                }
            }
            auto git = named_actgen.find(m.name);
            if (git != named_actgen.end()) td.act_gen[static_cast<size_t>(a)] = git->second;
            done[static_cast<size_t>(a)] = true;
            return true;
        };
        for (int a = 0; a < I.n_mor(); ++a) {
            const auto& m = I.morphisms[static_cast<size_t>(a)];
            if (a == I.id_of(m.src) && m.src == m.dst) resolve_identity(a);
        }
        for (int a = 0; a < I.n_mor(); ++a)
            if (!done[static_cast<size_t>(a)]) resolve_listed(a);
        // derive free-quiver composites b*a from resolved parts
        bool progress = true;
        while (progress) {
            progress = false;
            for (int c = 0; c < I.n_mor(); ++c) {
                if (done[static_cast<size_t>(c)]) continue;
                for (int a = 0; a < I.n_mor() && !done[static_cast<size_t>(c)]; ++a) {
                    if (!done[static_cast<size_t>(a)]) continue;
                    const auto& ma = I.morphisms[static_cast<size_t>(a)];
                    if (a == I.id_of(ma.src)) continue;
                    for (int b = 0; b < I.n_mor(); ++b) {
                        if (!done[static_cast<size_t>(b)] || !I.composable(b, a)) continue;
                        if (b == I.id_of(I.morphisms[static_cast<size_t>(b)].src)) continue;
                        if (I.compose(b, a) != c) continue;
                        const TiltingSubcategoryData& ti = td.fibers[static_cast<size_t>(ma.src)];
                        std::vector<int> amap;
                        for (size_t u = 0; u < ti.objects.size(); ++u)
                            amap.push_back(td.act_obj[static_cast<size_t>(b)][static_cast<size_t>(
                                td.act_obj[static_cast<size_t>(a)][u])]);
                        td.act_obj[static_cast<size_t>(c)] = amap;
                        for (size_t u = 0; u < ti.objects.size(); ++u) {
                            // rho(ba) = rho(b)(T(a)U) ∘ V(X(b))(rho(a)U)
                            ChainMap part = map_chain_map(td.x->at(b), td.rho[static_cast<size_t>(a)][u]);
                            ChainMap whole = compose_chain_maps(
                                td.rho[static_cast<size_t>(b)][static_cast<size_t>(
                                    td.act_obj[static_cast<size_t>(a)][u])],
                                part);
                            td.rho[static_cast<size_t>(c)].push_back(std::move(whole));
                        }
                        // generator images along the composite
                        for (const auto& [g, gm] : td.act_gen[static_cast<size_t>(a)]) {
                            int usrc = -1, udst = -1;
                            const TiltingSubcategoryData& tj = td.fibers[static_cast<size_t>(ma.dst)];
                            for (size_t u = 0; u < tj.objects.size(); ++u) {
                                if (complex_eq(gm.src, tj.objects[u])) usrc = static_cast<int>(u);
                                if (complex_eq(gm.dst, tj.objects[u])) udst = static_cast<int>(u);
                            }
                            if (usrc < 0 || udst < 0)
                                throw ParseErr(s.line, "cannot derive generator image along " +
                                                           I.morphisms[static_cast<size_t>(c)].name);
                            auto binv = kclass_inverse(td.rho[static_cast<size_t>(b)][static_cast<size_t>(usrc)]);
                            if (!binv) throw ParseErr(s.line, "rho is not invertible; cannot derive composite action");
                            ChainMap img = compose_chain_maps(
                                td.rho[static_cast<size_t>(b)][static_cast<size_t>(udst)],
                                compose_chain_maps(map_chain_map(td.x->at(b), gm), *binv));
                            td.act_gen[static_cast<size_t>(c)][g] = std::move(img);
                        }
                        done[static_cast<size_t>(c)] = true;
                        progress = true;
                        break;
                    }
                }
            }
        }
        for (int a = 0; a < I.n_mor(); ++a)
            if (!done[static_cast<size_t>(a)])
                throw ParseErr(s.line, "no action data for index morphism " +
                                           I.morphisms[static_cast<size_t>(a)].name);
        // user certificates recorded under this tilting's name
        auto cit = ws.certificates.find(s.args[0]);
        if (cit != ws.certificates.end()) td.user_certs = cit->second;
        ws.tiltings[s.args[0]] = std::move(td);
        ws.order.push_back("tilting " + s.args[0]);
    }

    void do_certificate(const RawSection& s) {
        if (s.args.size() != 3) throw ParseErr(s.line, "certificate needs: tilting fiber target");
        GenerationCertificate cert;
        cert.found = true;
        cert.target_name = s.args[2];
        // fiber/target indices resolved when the tilting section is loaded
        auto tit = ws.tiltings.find(s.args[0]);
        const std::string* steps = get_kv(s, "steps");
        if (!steps) throw ParseErr(s.line, "certificate needs steps");
        for (const auto& ent : split(*steps, ';')) {
            if (ent.empty()) continue;
            auto toks = split_ws(ent);
            CertStep st;
            if (toks[0] == "take" && toks.size() == 2) {
                st.op = CertStep::Op::Take;
                st.amount = std::stoi(toks[1]);
            } else if (toks[0] == "shift" && toks.size() == 3) {
                st.op = CertStep::Op::Shift;
                st.a = std::stoi(toks[1]);
                st.amount = std::stoi(toks[2]);
            } else if (toks[0] == "cone" && toks.size() == 4) {
                st.op = CertStep::Op::Cone;
                st.a = std::stoi(toks[1]);
                st.b = std::stoi(toks[2]);
                st.amount = std::stoi(toks[3]);
            } else if (toks[0] == "reduce" && toks.size() == 2) {
                st.op = CertStep::Op::Reduce;
                st.a = std::stoi(toks[1]);
            } else if (toks[0] == "block" && toks.size() == 3) {
                st.op = CertStep::Op::Block;
                st.a = std::stoi(toks[1]);
                st.amount = std::stoi(toks[2]);
            } else
                throw ParseErr(s.line, "bad certificate step: " + ent);
            cert.steps.push_back(st);
        }
        // resolve fiber and target against the colax data
        if (tit != ws.tiltings.end()) {
            const IndexCat& I = tit->second.x->index;
            cert.fiber = I.obj_index(s.args[1]);
            if (cert.fiber >= 0)
                cert.target_obj =
                    tit->second.x->fiber[static_cast<size_t>(cert.fiber)]->obj_index(s.args[2]);
            tit->second.user_certs.push_back(cert);
        } else {
            ws.certificates[s.args[0]].push_back(cert);
        }
        ws.order.push_back("certificate " + s.args[0]);
    }

    void do_equivalence(const RawSection& s) {
        if (s.args.empty()) throw ParseErr(s.line, "equivalence section needs a name");
        Workspace::EquivEntry e;
        e.source = need_kv(s, "source");
        e.tilting = need_kv(s, "tilting");
        ColaxPtr src = colax(e.source, s.line);
        auto tit = ws.tiltings.find(e.tilting);
        if (tit == ws.tiltings.end()) throw ParseErr(s.line, "unknown tilting " + e.tilting);
        const TiltingColaxData& td = tit->second;
        const IndexCat& I = src->index;
        e.spec.obj_map.assign(static_cast<size_t>(I.n_obj()), {});
        e.spec.arrow_images.resize(static_cast<size_t>(I.n_obj()));
        for (const auto& [ln, kv] : s.kv) {
            if (kv.first.rfind("objects ", 0) == 0) {
                int io = I.obj_index(trim(kv.first.substr(8)));
                if (io < 0) throw ParseErr(ln, "unknown index object in " + kv.first);
                const FinKCat& xpi = *src->fiber[static_cast<size_t>(io)];
                e.spec.obj_map[static_cast<size_t>(io)].assign(static_cast<size_t>(xpi.n()), -1);
                for (const auto& tok : split(kv.second, ';')) {
                    if (tok.empty()) continue;
                    std::string o, tn;
                    if (!split_pair(tok, "->", &o, &tn)) throw ParseErr(ln, "bad object entry " + tok);
                    int x = xpi.obj_index(o);
                    int ti = td.fibers[static_cast<size_t>(io)].find(tn);
                    if (x < 0 || ti < 0) throw ParseErr(ln, "unknown name in " + tok);
                    e.spec.obj_map[static_cast<size_t>(io)][static_cast<size_t>(x)] = ti;
                }
            } else if (kv.first.rfind("arrows ", 0) == 0) {
                int io = I.obj_index(trim(kv.first.substr(7)));
                if (io < 0) throw ParseErr(ln, "unknown index object in " + kv.first);
                for (const auto& tok : split(kv.second, ';')) {
                    if (tok.empty()) continue;
                    std::string a, expr;
                    if (!split_pair(tok, "->", &a, &expr)) throw ParseErr(ln, "bad arrow entry " + tok);
                    e.spec.arrow_images[static_cast<size_t>(io)][a] = parse_chain_expr(expr, ln);
                }
            }
        }
        ws.equivalences[s.args[0]] = std::move(e);
        ws.order.push_back("equivalence " + s.args[0]);
    }
};

}  // namespace

Workspace load_document(const std::string& text) {
    Loader ld;
    for (const RawSection& s : tokenize(text)) {
        if (s.kind == "field")
            ld.do_field(s);
        else if (s.kind == "index")
            ld.do_index(s);
        else if (s.kind == "category")
            ld.do_category(s);
        else if (s.kind == "functor")
            ld.do_functor(s);
        else if (s.kind == "nat")
            ld.do_nat(s);
        else if (s.kind == "colax")
            ld.do_colax(s);
        else if (s.kind == "transformation")
            ld.do_transformation(s);
        else if (s.kind == "complex")
            ld.do_complex(s);
        else if (s.kind == "chainmap")
            ld.do_chainmap(s);
        else if (s.kind == "tilting")
            ld.do_tilting(s);
        else if (s.kind == "certificate")
            ld.do_certificate(s);
        else if (s.kind == "equivalence")
            ld.do_equivalence(s);
        else
            throw ParseErr(s.line, "unknown section kind [" + s.kind + "]");
    }
    return ld.ws;
}

}  // namespace grcat
