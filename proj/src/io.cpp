#include "fibercov/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "fibercov/error.hpp"

namespace fibercov::io {

namespace fs = std::filesystem;

namespace {

struct Line
{
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> read_lines(std::istream& in, std::size_t first_line = 1)
{
    std::vector<Line> out;
    std::string text;
    std::size_t number = first_line;
    for (; std::getline(in, text); ++number)
    {
        std::istringstream ss(text);
        Line line{number, {}};
        for (std::string tok; ss >> tok;)
            line.tokens.push_back(tok);
        if (line.tokens.empty() || line.tokens.front().front() == '#')
            continue;
        out.push_back(std::move(line));
    }
    return out;
}

std::vector<Line> read_file_lines(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError(path, 0, "cannot open file");
    return read_lines(in);
}

Integer parse_integer(const std::string& tok, const std::string& file, std::size_t line)
{
    std::size_t start = (tok.size() > 1 && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
    if (tok.empty() || start == tok.size() ||
        !std::all_of(tok.begin() + start, tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw FormatError(file, line, "expected an integer, got '" + tok + "'");
    return Integer(tok[0] == '+' ? tok.substr(1) : tok);
}

long long parse_small(const std::string& tok, const std::string& file, std::size_t line)
{
    Integer v = parse_integer(tok, file, line);
    if (v > Integer(1) << 40 || v < -(Integer(1) << 40))
        throw FormatError(file, line, "integer out of range: " + tok);
    return v.convert_to<long long>();
}

int parse_vertex(const std::string& tok, const std::string& file, std::size_t line)
{
    long long v = parse_small(tok, file, line);
    if (v < 0 || v > 1'000'000'000)
        throw FormatError(file, line, "vertex ids must be non-negative integers, got '" + tok + "'");
    return static_cast<int>(v);
}

std::string simplex_text(const Simplex& s)
{
    std::string out;
    for (int v : s)
        out += (out.empty() ? "" : " ") + std::to_string(v);
    return out;
}

Cochain cochain_from_lines(const std::vector<Line>& lines, const ComplexPtr& X, const std::string& file,
                           int expected_degree, std::size_t fallback_line)
{
    if (lines.empty() || lines.front().tokens.front() != "degree" || lines.front().tokens.size() != 2)
        throw FormatError(file, lines.empty() ? fallback_line : lines.front().number,
                          "cochain must start with 'degree <k>'");
    const long long k = parse_small(lines.front().tokens[1], file, lines.front().number);
    if (k < 0 || k > X->dimension())
        throw FormatError(file, lines.front().number,
                          "cochain degree " + std::to_string(k) + " outside [0, " + std::to_string(X->dimension()) + "]");
    if (expected_degree >= 0 && k != expected_degree)
        throw FormatError(file, lines.front().number,
                          "expected a degree-" + std::to_string(expected_degree) + " cochain, got degree " +
                              std::to_string(k));
    Cochain z(X, static_cast<int>(k));
    std::vector<bool> seen(X->count(static_cast<int>(k)));
    for (std::size_t li = 1; li < lines.size(); ++li)
    {
        const Line& l = lines[li];
        if (l.tokens.size() != static_cast<std::size_t>(k) + 2)
            throw FormatError(file, l.number, "expected " + std::to_string(k + 1) + " vertex ids and a value");
        Simplex s;
        for (long long i = 0; i <= k; ++i)
            s.push_back(parse_vertex(l.tokens[i], file, l.number));
        if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
            throw FormatError(file, l.number, "vertex tuple [" + simplex_text(s) + "] is not strictly increasing");
        auto idx = X->index_of(s);
        if (!idx)
            throw FormatError(file, l.number, "simplex [" + simplex_text(s) + "] is not in the complex");
        if (seen[*idx])
            throw FormatError(file, l.number, "simplex [" + simplex_text(s) + "] listed twice");
        seen[*idx] = true;
        z[*idx] = parse_integer(l.tokens.back(), file, l.number);
    }
    return z;
}

/// Top-level keys (single-line) and begin/end blocks of a record file.
struct Record
{
    std::string file;
    fs::path dir;
    std::map<std::string, Line> keys;
    std::map<std::string, std::pair<std::size_t, std::vector<Line>>> blocks;

    const Line* key(const std::string& k) const
    {
        auto it = keys.find(k);
        return it == keys.end() ? nullptr : &it->second;
    }

    const Line& require(const std::string& k) const
    {
        const Line* l = key(k);
        if (!l)
            throw FormatError(file, 0, "missing '" + k + "' line");
        return *l;
    }

    const std::string& single_arg(const Line& l) const
    {
        if (l.tokens.size() != 2)
            throw FormatError(file, l.number, "'" + l.tokens[0] + "' takes exactly one argument");
        return l.tokens[1];
    }
};

Record read_record(const std::string& path, const std::set<std::string>& allowed_keys,
                   const std::set<std::string>& allowed_blocks)
{
    Record r;
    r.file = path;
    r.dir = fs::path(path).parent_path();
    const std::vector<Line> lines = read_file_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i)
    {
        const Line& l = lines[i];
        const std::string& head = l.tokens[0];
        if (head == "begin")
        {
            if (l.tokens.size() != 2 || !allowed_blocks.count(l.tokens[1]))
                throw FormatError(path, l.number, "unexpected block '" + (l.tokens.size() > 1 ? l.tokens[1] : "") + "'");
            const std::string tag = l.tokens[1];
            if (r.blocks.count(tag))
                throw FormatError(path, l.number, "block '" + tag + "' appears twice");
            std::vector<Line> body;
            std::size_t j = i + 1;
            for (; j < lines.size(); ++j)
            {
                if (lines[j].tokens[0] == "end")
                    break;
                body.push_back(lines[j]);
            }
            if (j == lines.size() || lines[j].tokens.size() != 2 || lines[j].tokens[1] != tag)
                throw FormatError(path, l.number, "block '" + tag + "' is not closed by 'end " + tag + "'");
            r.blocks[tag] = {l.number, std::move(body)};
            i = j;
            continue;
        }
        if (!allowed_keys.count(head))
            throw FormatError(path, l.number, "unknown directive '" + head + "'");
        if (r.keys.count(head))
            throw FormatError(path, l.number, "directive '" + head + "' appears twice");
        r.keys[head] = l;
    }
    return r;
}

void require_cocycle(const Cochain& z, const std::string& file, std::size_t line, const std::string& what)
{
    const Cochain dz = z.coboundary();
    for (std::size_t i = 0; i < dz.values().size(); ++i)
        if (!dz[i].is_zero())
            throw FormatError(file, line,
                              what + " is not a cocycle (coboundary nonzero on [" +
                                  simplex_text(z.complex()->simplex(z.degree() + 1, i)) + "])");
}

} // namespace

std::string canonical_ref(const std::string& ref, const fs::path& base_dir)
{
    if (ref.rfind("builtin:", 0) == 0)
        return ref;
    fs::path p(ref);
    if (p.is_relative() && !base_dir.empty())
        p = base_dir / p;
    return fs::weakly_canonical(fs::absolute(p)).string();
}

ComplexPtr parse_complex(std::istream& in, const std::string& source_name)
{
    const std::vector<Line> lines = read_lines(in);
    long long dim = -1;
    std::vector<Simplex> top;
    for (const Line& l : lines)
    {
        if (l.tokens[0] == "dim")
        {
            if (dim >= 0)
                throw FormatError(source_name, l.number, "'dim' declared twice");
            if (l.tokens.size() != 2)
                throw FormatError(source_name, l.number, "expected 'dim <k>'");
            dim = parse_small(l.tokens[1], source_name, l.number);
            if (dim < 0 || dim > 8)
                throw FormatError(source_name, l.number, "dimension must lie in [0, 8]");
        }
        else if (l.tokens[0] == "simplex")
        {
            if (dim < 0)
                throw FormatError(source_name, l.number, "'simplex' before 'dim'");
            if (l.tokens.size() != static_cast<std::size_t>(dim) + 2)
                throw FormatError(source_name, l.number,
                                  "a top simplex needs exactly " + std::to_string(dim + 1) + " vertices");
            Simplex s;
            for (std::size_t i = 1; i < l.tokens.size(); ++i)
                s.push_back(parse_vertex(l.tokens[i], source_name, l.number));
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw FormatError(source_name, l.number, "simplex has a repeated vertex");
            top.push_back(std::move(s));
        }
        else
            throw FormatError(source_name, l.number, "unknown directive '" + l.tokens[0] + "'");
    }
    if (dim < 0)
        throw FormatError(source_name, 0, "missing 'dim' line");
    if (top.empty())
        throw FormatError(source_name, 0, "no simplices");
    return SimplicialComplex::from_top_simplices(top, source_name);
}

void write_complex(std::ostream& out, const SimplicialComplex& X)
{
    const int d = X.dimension();
    // Only pure complexes round-trip through the top-simplex format.
    std::set<Simplex> covered;
    for (const auto& s : X.simplices(d))
        for (std::size_t mask = 1; mask < (std::size_t(1) << s.size()); ++mask)
        {
            Simplex f;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (mask & (std::size_t(1) << i))
                    f.push_back(s[i]);
            covered.insert(std::move(f));
        }
    for (int k = 0; k < d; ++k)
        for (const auto& s : X.simplices(k))
            if (!covered.count(s))
                throw Error("write_complex: complex is not pure");
    out << "dim " << d << '\n';
    for (const auto& s : X.simplices(d))
        out << "simplex " << simplex_text(s) << '\n';
}

Cochain parse_cochain(std::istream& in, const ComplexPtr& X, const std::string& source_name, int expected_degree,
                      std::size_t first_line)
{
    return cochain_from_lines(read_lines(in, first_line), X, source_name, expected_degree, first_line);
}

void write_cochain(std::ostream& out, const Cochain& z)
{
    out << "degree " << z.degree() << '\n';
    const auto& simplices = z.complex()->simplices(z.degree());
    for (std::size_t i = 0; i < simplices.size(); ++i)
        if (!z[i].is_zero())
            out << simplex_text(simplices[i]) << ' ' << z[i] << '\n';
}

void write_covering(std::ostream& out, const FiberwiseCovering& phi, const std::string& source_ref,
                    const std::string& target_ref)
{
    out << "source " << source_ref << '\n'
        << "target " << target_ref << '\n'
        << "sheets " << phi.sheets() << '\n'
        << "begin cochain\n";
    write_cochain(out, phi.twist_cochain());
    out << "end cochain\n";
}

void write_engel(std::ostream& out, const EngelClass& D, const std::string& bundle_ref,
                 const std::string& contact_ref)
{
    out << "bundle " << bundle_ref << '\n'
        << "contact " << contact_ref << '\n'
        << "tw " << D.tw() << '\n'
        << "begin cochain\n";
    write_cochain(out, D.covering().twist_cochain());
    out << "end cochain\n";
    if (D.witness())
    {
        out << "begin oriented-witness\n";
        write_cochain(out, D.witness()->half_covering.twist_cochain());
        out << "end oriented-witness\n";
    }
}

// ---------------------------------------------------------------- Loader

ComplexPtr Loader::complex(const std::string& ref, const fs::path& base_dir)
{
    const std::string key = canonical_ref(ref, base_dir);
    if (auto it = complexes_.find(key); it != complexes_.end())
        return it->second;
    ComplexPtr X;
    if (key.rfind("builtin:", 0) == 0)
    {
        X = builtin::by_name(key);
        if (!X)
            throw FormatError(ref, 0, "unknown built-in complex (known: builtin:t3, builtin:rp3, builtin:circle)");
    }
    else
    {
        std::ifstream in(key);
        if (!in)
            throw FormatError(key, 0, "cannot open complex file");
        X = parse_complex(in, key);
    }
    complexes_.emplace(key, X);
    return X;
}

Cochain Loader::cochain(const std::string& path, const ComplexPtr& X, int expected_degree)
{
    return cochain_from_lines(read_file_lines(path), X, path, expected_degree, 1);
}

namespace {

// Euler data of a bundle or contact-label record.
Cochain euler_from_record(const Record& r, const ComplexPtr& X, Loader& loader)
{
    const Line* euler = r.key("euler");
    const bool inline_block = r.blocks.count("cochain") > 0;
    const bool coords = r.key("free") || r.key("torsion");
    if (int(euler != nullptr) + int(inline_block) + int(coords) != 1)
        throw FormatError(r.file, 0,
                          "give Euler data exactly once: 'euler <file>', 'euler zero', a cochain block, or "
                          "'free'/'torsion' coordinates");
    Cochain e(X, 2);
    std::size_t line = 0;
    if (euler)
    {
        line = euler->number;
        const std::string& arg = r.single_arg(*euler);
        if (arg != "zero")
            e = loader.cochain(canonical_ref(arg, r.dir), X, 2);
    }
    else if (inline_block)
    {
        const auto& [start, body] = r.blocks.at("cochain");
        line = start;
        e = cochain_from_lines(body, X, r.file, 2, start);
    }
    else
    {
        GroupPtr H2 = X->cohomology(2);
        IntVector f, t;
        if (const Line* l = r.key("free"))
            for (std::size_t i = 1; i < l->tokens.size(); ++i)
                f.push_back(parse_integer(l->tokens[i], r.file, l->number));
        if (const Line* l = r.key("torsion"))
            for (std::size_t i = 1; i < l->tokens.size(); ++i)
                t.push_back(parse_integer(l->tokens[i], r.file, l->number));
        if (f.size() != H2->free_rank() || t.size() != H2->torsion_orders().size())
            throw FormatError(r.file, r.key("free") ? r.key("free")->number : r.key("torsion")->number,
                              "coordinates do not match H^2 = " + H2->describe());
        return H2->representative(H2->make_class(std::move(f), std::move(t)));
    }
    require_cocycle(e, r.file, line, "Euler cochain");
    return e;
}

} // namespace

CircleBundle Loader::bundle(const std::string& path)
{
    const std::string key = canonical_ref(path);
    if (auto it = bundles_.find(key); it != bundles_.end())
        return it->second;
    Record r = read_record(key, {"complex", "euler", "free", "torsion"}, {"cochain"});
    const Line& cl = r.require("complex");
    ComplexPtr X = complex(r.single_arg(cl), r.dir);
    if (X->dimension() < 2)
        throw FormatError(key, cl.number, "base complex must have dimension >= 2");
    CircleBundle B(euler_from_record(r, X, *this));
    bundles_.emplace(key, B);
    return B;
}

ContactLabel Loader::contact(const std::string& path)
{
    const std::string key = canonical_ref(path);
    if (auto it = contacts_.find(key); it != contacts_.end())
        return it->second;
    Record r = read_record(key, {"name", "complex", "euler", "free", "torsion"}, {"cochain"});
    const std::string name = r.single_arg(r.require("name"));
    const Line& cl = r.require("complex");
    ComplexPtr X = complex(r.single_arg(cl), r.dir);
    if (X->dimension() < 2)
        throw FormatError(key, cl.number, "base complex must have dimension >= 2");
    ContactLabel xi(name, euler_from_record(r, X, *this));
    contacts_.emplace(key, xi);
    return xi;
}

LoadedCovering Loader::covering(const std::string& path)
{
    const std::string key = canonical_ref(path);
    Record r = read_record(key, {"source", "target", "sheets"}, {"cochain"});
    const std::string src = canonical_ref(r.single_arg(r.require("source")), r.dir);
    const std::string tgt = canonical_ref(r.single_arg(r.require("target")), r.dir);
    CircleBundle Q = bundle(src);
    CircleBundle P = bundle(tgt);
    const Line& sl = r.require("sheets");
    if (Q.base().get() != P.base().get())
        throw FormatError(key, 0, "source and target bundles live over different complexes");
    const long long n = parse_small(r.single_arg(sl), key, sl.number);
    if (n < 1)
        throw FormatError(key, sl.number, "sheets must be >= 1");
    if (!r.blocks.count("cochain"))
        throw FormatError(key, 0, "missing 'begin cochain' block");
    const auto& [start, body] = r.blocks.at("cochain");
    Cochain c = cochain_from_lines(body, Q.base(), key, 1, start);
    if (auto bad = first_covering_violation(Q, P, n, c))
        throw FormatError(key, start,
                          "delta c != n*e_Q - e_P on 2-simplex [" + simplex_text(Q.base()->simplex(2, *bad)) + "]");
    return {FiberwiseCovering(Q, P, n, std::move(c)), src, tgt};
}

LoadedEngel Loader::engel(const std::string& path)
{
    const std::string key = canonical_ref(path);
    Record r = read_record(key, {"bundle", "contact", "tw"}, {"cochain", "oriented-witness"});
    const std::string bref = canonical_ref(r.single_arg(r.require("bundle")), r.dir);
    const std::string cref = canonical_ref(r.single_arg(r.require("contact")), r.dir);
    CircleBundle Q = bundle(bref);
    ContactLabel xi = contact(cref);
    if (Q.base().get() != xi.base().get())
        throw FormatError(key, 0, "bundle and contact label live over different complexes");
    const Line& tl = r.require("tw");
    const long long tw = parse_small(r.single_arg(tl), key, tl.number);
    if (tw == 0)
        throw FormatError(key, tl.number, "twisting number must be nonzero");
    if (!r.blocks.count("cochain"))
        throw FormatError(key, 0, "missing 'begin cochain' block");
    const auto& [start, body] = r.blocks.at("cochain");
    Cochain c = cochain_from_lines(body, Q.base(), key, 1, start);
    const CircleBundle target = prolongation_bundle(xi, tw < 0 ? -1 : 1);
    if (auto bad = first_covering_violation(Q, target, tw < 0 ? -tw : tw, c))
        throw FormatError(key, start,
                          "delta c != |tw|*e_Q - sign(tw)*2*e_xi on 2-simplex [" +
                              simplex_text(Q.base()->simplex(2, *bad)) + "]");
    std::optional<Cochain> witness;
    if (auto it = r.blocks.find("oriented-witness"); it != r.blocks.end())
    {
        witness = cochain_from_lines(it->second.second, Q.base(), key, 1, it->second.first);
        if (tw % 2 != 0)
            throw FormatError(key, it->second.first, "oriented witness requires an even twisting number");
        const CircleBundle half_target = unit_sphere_bundle(xi, tw < 0 ? -1 : 1);
        if (auto bad = first_covering_violation(Q, half_target, (tw < 0 ? -tw : tw) / 2, *witness))
            throw FormatError(key, it->second.first,
                              "witness violates delta c_half = |tw|/2*e_Q - sign(tw)*e_xi on 2-simplex [" +
                                  simplex_text(Q.base()->simplex(2, *bad)) + "]");
    }
    try
    {
        return {EngelClass(Q, xi, tw, std::move(c), std::move(witness)), bref, cref};
    }
    catch (const FormatError&)
    {
        throw;
    }
    catch (const Error& e)
    {
        throw FormatError(key, 0, e.what());
    }
}

} // namespace fibercov::io
