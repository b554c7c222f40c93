#include "propalg/specfile.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace propalg {

namespace {

struct Token {
    std::string text;
    int line = 0;
};

bool is_punct(char c) {
    return c == '{' || c == '}' || c == '(' || c == ')' || c == ';' || c == ':' || c == ',';
}

std::vector<Token> tokenize(const std::string& text, std::vector<std::string>& directives) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') {
            std::size_t end = text.find('\n', i);
            if (end == std::string::npos) end = n;
            std::string comment = text.substr(i, end - i);
            if (comment.rfind("#!", 0) == 0) {
                std::string body = comment.substr(2);
                while (!body.empty() && body.front() == ' ') body.erase(body.begin());
                directives.push_back(body);
            }
            i = end;
            continue;
        }
        if (c == '-' && i + 1 < n && text[i + 1] == '>') {
            out.push_back({"->", line});
            i += 2;
            continue;
        }
        if (is_punct(c)) {
            out.push_back({std::string(1, c), line});
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n) {
            const char d = text[j];
            if (d == ' ' || d == '\t' || d == '\r' || d == '\n' || d == '#' || is_punct(d))
                break;
            if (d == '-' && j + 1 < n && text[j + 1] == '>') break;
            ++j;
        }
        out.push_back({text.substr(i, j - i), line});
        i = j;
    }
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) {
        toks_ = tokenize(text, spec_.directives);
    }

    SpecFile run() {
        while (!done()) {
            const Token& t = peek();
            if (t.text == "algebra") {
                spec_.order.push_back({'a', spec_.algebras.size()});
                spec_.algebras.push_back(parse_algebra());
            } else if (t.text == "relation") {
                spec_.order.push_back({'r', spec_.relations.size()});
                spec_.relations.push_back(parse_relation());
            } else if (t.text == "map") {
                spec_.order.push_back({'m', spec_.maps.size()});
                spec_.maps.push_back(parse_map());
            } else if (t.text == "partition") {
                spec_.order.push_back({'p', spec_.partitions.size()});
                spec_.partitions.push_back(parse_partition());
            } else {
                fail(t.line, "expected a declaration, found '" + t.text + "'");
            }
        }
        return std::move(spec_);
    }

private:
    SpecFile spec_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(int line, const std::string& msg) { throw ParseError(line, msg); }

    bool done() const { return pos_ >= toks_.size(); }
    const Token& peek() const {
        if (done()) throw ParseError(0, "unexpected end of input");
        return toks_[pos_];
    }
    Token next() {
        Token t = peek();
        ++pos_;
        return t;
    }
    Token expect(const std::string& what) {
        Token t = next();
        if (t.text != what) fail(t.line, "expected '" + what + "', found '" + t.text + "'");
        return t;
    }
    bool accept(const std::string& what) {
        if (!done() && peek().text == what) {
            ++pos_;
            return true;
        }
        return false;
    }
    Token word(const char* role) {
        Token t = next();
        if (t.text.empty() || is_punct(t.text[0]) || t.text == "->")
            fail(t.line, std::string("expected ") + role + ", found '" + t.text + "'");
        return t;
    }

    Elem integer(const char* role) {
        Token t = word(role);
        Elem v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size())
            fail(t.line, std::string("expected an integer ") + role + ", found '" + t.text +
                             "'");
        return v;
    }

    AlgebraDecl parse_algebra() {
        AlgebraDecl d;
        d.line = expect("algebra").line;
        d.name = word("an algebra name").text;
        if (accept("builtin")) {
            d.builtin = true;
            Token k = word("a builtin algebra kind");
            if (k.text != "nat-succ" && k.text != "int-plus")
                fail(k.line, "unknown builtin algebra '" + k.text + "'");
            d.builtin_kind = k.text;
            if (accept("window")) d.window = integer("window width");
            return d;
        }
        expect("{");
        while (!accept("}")) {
            Token item = word("an algebra item");
            if (item.text == "universe") {
                expect(":");
                while (!done() && peek().text != ";" && peek().text != "}")
                    d.universe.push_back(word("an element label").text);
            } else if (item.text == "op") {
                Token spec = word("an operation like S/1");
                auto slash = spec.text.rfind('/');
                if (slash == std::string::npos || slash + 1 >= spec.text.size())
                    fail(spec.line, "operations are declared as name/arity");
                const std::string name = spec.text.substr(0, slash);
                unsigned arity = 0;
                const char* b = spec.text.data() + slash + 1;
                const char* e = spec.text.data() + spec.text.size();
                auto [p, ec] = std::from_chars(b, e, arity);
                if (name.empty() || ec != std::errc() || p != e)
                    fail(spec.line, "operations are declared as name/arity");
                d.ops.push_back({name, arity});
            } else if (item.text == "table") {
                AlgebraDecl::TableEntry entry;
                entry.line = item.line;
                entry.op = word("an operation name").text;
                expect(":");
                expect("(");
                while (!accept(")")) {
                    if (!entry.args.empty()) expect(",");
                    entry.args.push_back(word("an argument label").text);
                }
                expect("->");
                entry.result = word("a result label").text;
                d.tables.push_back(std::move(entry));
            } else {
                fail(item.line, "unknown algebra item '" + item.text + "'");
            }
            accept(";");
        }
        return d;
    }

    RelationDecl parse_relation() {
        RelationDecl d;
        d.line = expect("relation").line;
        d.name = word("a relation name").text;
        expect("on");
        d.source = word("a source algebra name").text;
        d.target = word("a target algebra name").text;
        expect("{");
        bool kind_set = false;
        while (!accept("}")) {
            Token item = word("a relation item");
            if (item.text == "extensional") {
                expect(":");
                kind_set = true;
                d.kind = "extensional";
                while (!done() && peek().text == "(") {
                    expect("(");
                    RelationDecl::QuadEntry q;
                    q.line = item.line;
                    for (int k = 0; k < 4; ++k) {
                        if (k) expect(",");
                        Token e = word("an element label");
                        q.line = e.line;
                        q.q[k] = e.text;
                    }
                    expect(")");
                    d.quads.push_back(std::move(q));
                }
            } else if (item.text == "builtin") {
                Token k = word("a builtin relation kind");
                kind_set = true;
                if (k.text == "difference" || k.text == "boolean-xor") {
                    d.kind = k.text;
                } else if (k.text == "witness") {
                    d.kind = "witness";
                    if (accept("depth")) d.depth = static_cast<unsigned>(integer("depth"));
                } else {
                    fail(k.line, "unknown builtin relation '" + k.text + "'");
                }
            } else if (item.text == "symmetric-closure") {
                expect(":");
                Token v = word("on or off");
                if (v.text == "on")
                    d.symmetric_closure = true;
                else if (v.text == "off")
                    d.symmetric_closure = false;
                else
                    fail(v.line, "symmetric-closure takes 'on' or 'off'");
            } else {
                fail(item.line, "unknown relation item '" + item.text + "'");
            }
            accept(";");
        }
        if (!kind_set) fail(d.line, "relation '" + d.name + "' declares no body");
        return d;
    }

    MapDecl parse_map() {
        MapDecl d;
        d.line = expect("map").line;
        d.name = word("a map name").text;
        expect(":");
        d.source = word("a source algebra name").text;
        expect("->");
        d.target = word("a target algebra name").text;
        if (accept("builtin")) {
            d.builtin = true;
            Token k = word("a builtin map kind");
            if (k.text == "translate") {
                d.builtin_kind = "translate";
                d.translate_k = integer("translation offset");
            } else if (k.text == "mod2" || k.text == "identity" || k.text == "negation") {
                d.builtin_kind = k.text;
            } else {
                fail(k.line, "unknown builtin map '" + k.text + "'");
            }
            return d;
        }
        expect("{");
        while (!accept("}")) {
            MapDecl::Arrow arrow;
            Token from = word("an element label");
            arrow.line = from.line;
            arrow.from = from.text;
            expect("->");
            arrow.to = word("an element label").text;
            d.arrows.push_back(std::move(arrow));
            accept(";");
        }
        return d;
    }

    PartitionDecl parse_partition() {
        PartitionDecl d;
        d.line = expect("partition").line;
        d.name = word("a partition name").text;
        expect("on");
        d.on = word("an algebra name").text;
        expect("{");
        while (!accept("}")) {
            expect("{");
            std::vector<std::string> block;
            while (!accept("}")) {
                if (!block.empty()) expect(",");
                block.push_back(word("an element label").text);
            }
            d.blocks.push_back(std::move(block));
            accept(";");
        }
        return d;
    }
};

} // namespace

SpecFile parse_spec(const std::string& text) { return Parser(text).run(); }

SpecFile parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

std::string serialize_spec(const SpecFile& spec) {
    std::ostringstream out;
    for (const std::string& d : spec.directives) out << "#! " << d << "\n";
    for (const SpecFile::DeclRef& ref : spec.order) {
        switch (ref.kind) {
        case 'a': {
            const AlgebraDecl& d = spec.algebras[ref.index];
            if (d.builtin) {
                out << "algebra " << d.name << " builtin " << d.builtin_kind;
                if (d.window) out << " window " << *d.window;
                out << "\n";
                break;
            }
            out << "algebra " << d.name << " {\n  universe:";
            for (const auto& e : d.universe) out << " " << e;
            out << ";\n";
            for (const auto& op : d.ops) out << "  op " << op.name << "/" << op.arity << ";\n";
            for (const auto& t : d.tables) {
                out << "  table " << t.op << ": (";
                for (std::size_t i = 0; i < t.args.size(); ++i)
                    out << (i ? "," : "") << t.args[i];
                out << ") -> " << t.result << ";\n";
            }
            out << "}\n";
            break;
        }
        case 'r': {
            const RelationDecl& d = spec.relations[ref.index];
            out << "relation " << d.name << " on " << d.source << " " << d.target << " {\n";
            if (d.kind == "extensional") {
                out << "  extensional:";
                for (const auto& q : d.quads)
                    out << " (" << q.q[0] << "," << q.q[1] << "," << q.q[2] << "," << q.q[3]
                        << ")";
                out << ";\n";
            } else if (d.kind == "witness") {
                out << "  builtin witness";
                if (d.depth) out << " depth " << *d.depth;
                out << ";\n";
            } else {
                out << "  builtin " << d.kind << ";\n";
            }
            out << "  symmetric-closure: " << (d.symmetric_closure ? "on" : "off") << ";\n}\n";
            break;
        }
        case 'm': {
            const MapDecl& d = spec.maps[ref.index];
            out << "map " << d.name << " : " << d.source << " -> " << d.target;
            if (d.builtin) {
                out << " builtin " << d.builtin_kind;
                if (d.builtin_kind == "translate") out << " " << d.translate_k;
                out << "\n";
                break;
            }
            out << " {\n";
            for (const auto& a : d.arrows) out << "  " << a.from << " -> " << a.to << ";\n";
            out << "}\n";
            break;
        }
        case 'p': {
            const PartitionDecl& d = spec.partitions[ref.index];
            out << "partition " << d.name << " on " << d.on << " {";
            for (const auto& b : d.blocks) {
                out << " {";
                for (std::size_t i = 0; i < b.size(); ++i) out << (i ? "," : "") << b[i];
                out << "}";
            }
            out << " }\n";
            break;
        }
        default:
            break;
        }
    }
    return out.str();
}

namespace {

template <class T>
void check_unique_names(const std::vector<T>& decls, const char* kind) {
    for (std::size_t i = 0; i < decls.size(); ++i)
        for (std::size_t j = i + 1; j < decls.size(); ++j)
            if (decls[i].name == decls[j].name)
                throw ParseError(decls[j].line, std::string("duplicate ") + kind + " name '" +
                                                    decls[j].name + "'");
}

AlgebraPtr build_algebra(const AlgebraDecl& d, const ResolveOptions& opts) {
    if (d.builtin) {
        const Elem w = d.window.value_or(opts.default_window);
        return d.builtin_kind == "nat-succ" ? FiniteAlgebra::nat_succ(d.name, w)
                                            : FiniteAlgebra::int_plus(d.name, w);
    }
    if (d.universe.empty()) throw ParseError(d.line, "algebra '" + d.name + "' has no universe");
    Signature sig;
    try {
        sig = Signature(d.ops);
    } catch (const Error& e) {
        throw ParseError(d.line, e.what());
    }
    auto label_index = [&](const std::string& label) -> std::optional<std::uint32_t> {
        for (std::size_t i = 0; i < d.universe.size(); ++i)
            if (d.universe[i] == label) return static_cast<std::uint32_t>(i);
        return std::nullopt;
    };
    const std::size_t n = d.universe.size();
    std::vector<OpTable> tables(d.ops.size());
    std::vector<std::vector<char>> filled(d.ops.size());
    for (std::size_t oi = 0; oi < d.ops.size(); ++oi) {
        std::size_t count = 1;
        for (unsigned k = 0; k < d.ops[oi].arity; ++k) count *= n;
        tables[oi].flat.assign(count, 0);
        filled[oi].assign(count, 0);
    }
    for (const auto& entry : d.tables) {
        auto oi = sig.index_of(entry.op);
        if (!oi) throw ParseError(entry.line, "table for undeclared operation '" + entry.op + "'");
        if (entry.args.size() != sig.at(*oi).arity)
            throw ParseError(entry.line, "arity mismatch in table for '" + entry.op + "'");
        std::size_t flat = 0;
        for (const auto& arg : entry.args) {
            auto idx = label_index(arg);
            if (!idx)
                throw ParseError(entry.line, "'" + arg + "' is not in the universe of '" +
                                                 d.name + "'");
            flat = flat * n + *idx;
        }
        auto res = label_index(entry.result);
        if (!res)
            throw ParseError(entry.line, "'" + entry.result + "' is not in the universe of '" +
                                             d.name + "'");
        if (filled[*oi][flat])
            throw ParseError(entry.line, "duplicate table entry for '" + entry.op + "'");
        filled[*oi][flat] = 1;
        tables[*oi].flat[flat] = *res;
    }
    for (std::size_t oi = 0; oi < d.ops.size(); ++oi)
        for (std::size_t k = 0; k < filled[oi].size(); ++k)
            if (!filled[oi][k])
                throw ParseError(d.line, "table for '" + d.ops[oi].name + "' in '" + d.name +
                                             "' is not total");
    try {
        return FiniteAlgebra::tabular(d.name, d.universe, std::move(sig), std::move(tables));
    } catch (const Error& e) {
        throw ParseError(d.line, e.what());
    }
}

Elem resolve_element(const AlgebraPtr& alg, const std::string& label, int line) {
    auto e = alg->element_of(label);
    if (!e)
        throw ParseError(line,
                         "'" + label + "' is not an element of '" + alg->name() + "'");
    return *e;
}

} // namespace

const AlgebraPtr& Resolved::algebra(const std::string& name) const {
    auto it = algebras.find(name);
    if (it == algebras.end()) throw PreconditionError("unknown algebra '" + name + "'");
    return it->second;
}
const RelationPtr& Resolved::relation(const std::string& name) const {
    auto it = relations.find(name);
    if (it == relations.end()) throw PreconditionError("unknown relation '" + name + "'");
    return it->second;
}
const Mapping& Resolved::map(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw PreconditionError("unknown map '" + name + "'");
    return it->second;
}
const Partition& Resolved::partition(const std::string& name) const {
    auto it = partitions.find(name);
    if (it == partitions.end()) throw PreconditionError("unknown partition '" + name + "'");
    return it->second;
}

Resolved resolve(const SpecFile& spec, const ResolveOptions& opts) {
    check_unique_names(spec.algebras, "algebra");
    check_unique_names(spec.relations, "relation");
    check_unique_names(spec.maps, "map");
    check_unique_names(spec.partitions, "partition");

    Resolved out;
    for (const auto& d : spec.algebras) out.algebras.emplace(d.name, build_algebra(d, opts));

    auto find_algebra = [&](const std::string& name, int line) -> const AlgebraPtr& {
        auto it = out.algebras.find(name);
        if (it == out.algebras.end())
            throw ParseError(line, "reference to undeclared algebra '" + name + "'");
        return it->second;
    };

    for (const auto& d : spec.relations) {
        const AlgebraPtr& src = find_algebra(d.source, d.line);
        const AlgebraPtr& tgt = find_algebra(d.target, d.line);
        try {
            if (d.kind == "difference") {
                if (d.source != d.target)
                    throw PreconditionError(
                        "the difference relation needs source = target");
                out.relations.emplace(d.name, ProportionRelation::difference(src, d.name));
            } else if (d.kind == "boolean-xor") {
                out.relations.emplace(d.name,
                                      ProportionRelation::boolean_xor(src, tgt, d.name));
            } else if (d.kind == "witness") {
                out.relations.emplace(
                    d.name, ProportionRelation::witness(
                                src, tgt, d.depth.value_or(opts.default_depth), d.name));
            } else {
                std::vector<Quad> quads;
                for (const auto& q : d.quads)
                    quads.push_back({resolve_element(src, q.q[0], q.line),
                                     resolve_element(src, q.q[1], q.line),
                                     resolve_element(tgt, q.q[2], q.line),
                                     resolve_element(tgt, q.q[3], q.line)});
                out.relations.emplace(
                    d.name, ProportionRelation::extensional(src, tgt, std::move(quads),
                                                            d.symmetric_closure, d.name));
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(d.line, std::string(e.what()) + " (relation '" + d.name + "')");
        }
    }

    for (const auto& d : spec.maps) {
        const AlgebraPtr& src = find_algebra(d.source, d.line);
        const AlgebraPtr& tgt = find_algebra(d.target, d.line);
        try {
            if (d.builtin) {
                if (d.builtin_kind == "identity") {
                    if (!same_algebra(src, tgt))
                        throw PreconditionError("identity needs source = target");
                    out.maps.emplace(d.name, Mapping::identity(src, d.name));
                } else if (d.builtin_kind == "translate") {
                    if (!same_algebra(src, tgt))
                        throw PreconditionError("translate needs source = target");
                    out.maps.emplace(d.name, Mapping::translate(src, d.translate_k, d.name));
                } else if (d.builtin_kind == "negation") {
                    if (!same_algebra(src, tgt))
                        throw PreconditionError("negation needs source = target");
                    out.maps.emplace(d.name, Mapping::negation(src, d.name));
                } else {
                    out.maps.emplace(d.name, Mapping::mod2(src, tgt, d.name));
                }
            } else {
                if (!src->tabular_backed())
                    throw PreconditionError("graph maps need a tabular source");
                std::vector<Elem> images(src->size(), -1);
                std::vector<char> seen(src->size(), 0);
                for (const auto& a : d.arrows) {
                    const Elem from = resolve_element(src, a.from, a.line);
                    if (seen[static_cast<std::size_t>(from)])
                        throw ParseError(a.line, "duplicate image for '" + a.from + "'");
                    seen[static_cast<std::size_t>(from)] = 1;
                    images[static_cast<std::size_t>(from)] =
                        resolve_element(tgt, a.to, a.line);
                }
                for (std::size_t i = 0; i < seen.size(); ++i)
                    if (!seen[i])
                        throw ParseError(d.line, "map '" + d.name + "' gives no image for '" +
                                                     src->label(static_cast<Elem>(i)) + "'");
                out.maps.emplace(d.name, Mapping::from_graph(src, tgt, images, d.name));
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(d.line, std::string(e.what()) + " (map '" + d.name + "')");
        }
    }

    for (const auto& d : spec.partitions) {
        const AlgebraPtr& alg = find_algebra(d.on, d.line);
        std::vector<std::vector<Elem>> blocks;
        for (const auto& b : d.blocks) {
            std::vector<Elem> block;
            for (const auto& label : b) block.push_back(resolve_element(alg, label, d.line));
            blocks.push_back(std::move(block));
        }
        try {
            out.partitions.emplace(d.name, Partition(alg, std::move(blocks)));
        } catch (const Error& e) {
            throw ParseError(d.line, std::string(e.what()) + " (partition '" + d.name + "')");
        }
    }
    return out;
}

} // namespace propalg
