#ifndef PROPALG_SPECFILE_HPP
#define PROPALG_SPECFILE_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "propalg/mapping.hpp"
#include "propalg/relation.hpp"

namespace propalg {

// Syntactic declarations, before name resolution.  Line numbers are for
// error reporting only and do not take part in structural equality.

struct AlgebraDecl {
    int line = 0;
    std::string name;
    bool builtin = false;
    std::string builtin_kind; // nat-succ | int-plus
    std::optional<Elem> window;
    std::vector<std::string> universe;
    std::vector<OpSig> ops;
    struct TableEntry {
        int line = 0;
        std::string op;
        std::vector<std::string> args;
        std::string result;
        friend bool operator==(const TableEntry& x, const TableEntry& y) {
            return x.op == y.op && x.args == y.args && x.result == y.result;
        }
    };
    std::vector<TableEntry> tables;

    friend bool operator==(const AlgebraDecl& x, const AlgebraDecl& y) {
        return x.name == y.name && x.builtin == y.builtin &&
               x.builtin_kind == y.builtin_kind && x.window == y.window &&
               x.universe == y.universe && x.ops == y.ops && x.tables == y.tables;
    }
};

struct RelationDecl {
    int line = 0;
    std::string name, source, target;
    std::string kind = "extensional"; // extensional | difference | boolean-xor | witness
    std::optional<unsigned> depth;
    bool symmetric_closure = true;
    struct QuadEntry {
        int line = 0;
        std::array<std::string, 4> q;
        friend bool operator==(const QuadEntry& x, const QuadEntry& y) { return x.q == y.q; }
    };
    std::vector<QuadEntry> quads;

    friend bool operator==(const RelationDecl& x, const RelationDecl& y) {
        return x.name == y.name && x.source == y.source && x.target == y.target &&
               x.kind == y.kind && x.depth == y.depth &&
               x.symmetric_closure == y.symmetric_closure && x.quads == y.quads;
    }
};

struct MapDecl {
    int line = 0;
    std::string name, source, target;
    bool builtin = false;
    std::string builtin_kind; // translate | mod2 | identity | negation
    Elem translate_k = 0;
    struct Arrow {
        int line = 0;
        std::string from, to;
        friend bool operator==(const Arrow& x, const Arrow& y) {
            return x.from == y.from && x.to == y.to;
        }
    };
    std::vector<Arrow> arrows;

    friend bool operator==(const MapDecl& x, const MapDecl& y) {
        return x.name == y.name && x.source == y.source && x.target == y.target &&
               x.builtin == y.builtin && x.builtin_kind == y.builtin_kind &&
               x.translate_k == y.translate_k && x.arrows == y.arrows;
    }
};

struct PartitionDecl {
    int line = 0;
    std::string name, on;
    std::vector<std::vector<std::string>> blocks;

    friend bool operator==(const PartitionDecl& x, const PartitionDecl& y) {
        return x.name == y.name && x.on == y.on && x.blocks == y.blocks;
    }
};

/// A parsed spec file: declarations in order, plus any `#!` directive
/// lines (used by exhibit files; ordinary comments are dropped).
struct SpecFile {
    std::vector<AlgebraDecl> algebras;
    std::vector<RelationDecl> relations;
    std::vector<MapDecl> maps;
    std::vector<PartitionDecl> partitions;
    std::vector<std::string> directives;

    struct DeclRef {
        char kind; // 'a' 'r' 'm' 'p'
        std::size_t index;
        friend bool operator==(const DeclRef& x, const DeclRef& y) {
            return x.kind == y.kind && x.index == y.index;
        }
    };
    std::vector<DeclRef> order;

    friend bool operator==(const SpecFile& x, const SpecFile& y) {
        return x.algebras == y.algebras && x.relations == y.relations && x.maps == y.maps &&
               x.partitions == y.partitions && x.directives == y.directives &&
               x.order == y.order;
    }
};

SpecFile parse_spec(const std::string& text);
SpecFile parse_spec_file(const std::string& path);
std::string serialize_spec(const SpecFile& spec);

/// Defaults applied where the file leaves window or depth implicit.
struct ResolveOptions {
    Elem default_window = 64;
    unsigned default_depth = 3;
};

/// Declarations resolved into live objects.
struct Resolved {
    std::map<std::string, AlgebraPtr> algebras;
    std::map<std::string, RelationPtr> relations;
    std::map<std::string, Mapping> maps;
    std::map<std::string, Partition> partitions;

    const AlgebraPtr& algebra(const std::string& name) const;
    const RelationPtr& relation(const std::string& name) const;
    const Mapping& map(const std::string& name) const;
    const Partition& partition(const std::string& name) const;
};

Resolved resolve(const SpecFile& spec, const ResolveOptions& opts = {});

} // namespace propalg

#endif
