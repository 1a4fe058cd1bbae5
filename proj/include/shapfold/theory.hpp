#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "shapfold/dataset.hpp"

namespace shapfold {

// A default theory's literals reference its own item table (TheoryItem), so a
// theory parsed from text is self-contained and only bound to a concrete
// dataset schema at evaluation time.

struct Literal {
    enum class Kind { ItemTest, NafAb };
    Kind kind = Kind::ItemTest;
    int index = 0;  // item index (ItemTest) or abnormality id (NafAb)

    bool operator==(const Literal&) const = default;
};

struct ClauseHead {
    bool is_target = true;
    int ab_index = -1;

    bool operator==(const ClauseHead&) const = default;
};

struct Clause {
    ClauseHead head;
    std::vector<Literal> body;  // item tests first, naf literals trailing
    bool low_precision = false; // exception learning was attempted and abandoned
};

struct DefaultTheory {
    std::string target_name;
    std::vector<Item> items;
    std::vector<Clause> defaults;                 // target-headed
    std::vector<std::vector<Clause>> abnormals;   // ab id -> its clauses
    std::vector<std::string> ab_names;            // parallel to abnormals

    int clause_count() const;
    int allocate_ab();  // fresh ab id, named "ab<k>"

    // Drops abnormality predicates no body references (left behind when a
    // candidate clause is discarded) and renumbers the rest densely in first
    // reference order.
    void prune_unused_abnormals();
};

// Prolog-style rendering, e.g.
//   acceptable(A) :- safety(A,high), not ab0(A).
//   ab0(A) :- persons(A,2).
// Values that are not plain lowercase atoms are single-quoted. Items with
// Absent polarity render as `not feature(A,value)`.
std::string render_theory(const DefaultTheory& theory);
// Inverse of render_theory; also accepts unary base predicates `bird(A)`
// (read as the item test bird(A,true)). ParseError carries the line number.
DefaultTheory parse_theory(const std::string& text);
DefaultTheory parse_theory_file(const std::string& path);

// Maps each theory item to the dataset's item index; throws DataError naming
// the first item the schema lacks.
std::vector<int> bind_items(const DefaultTheory& theory, const std::vector<Item>& schema);
inline std::vector<int> identity_binding(std::size_t n) {
    std::vector<int> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<int>(i);
    return b;
}

// NAF coverage: every item test holds and no clause of any naf-referenced
// abnormality predicate covers the example (recursively).
bool covers_example(const DefaultTheory& theory, const Clause& clause,
                    const std::uint8_t* bits, const std::vector<int>& binding);
std::vector<int> covers(const DefaultTheory& theory, const Clause& clause,
                        const std::vector<int>& ids, const Dataset& dataset,
                        const std::vector<int>& binding);

// Positive iff some default clause covers the example.
bool classify(const DefaultTheory& theory, std::span<const std::uint8_t> bits,
              const std::vector<int>& binding);

// Lowercases and maps non-alphanumerics to '_': how feature names appear in
// rendered clauses.
std::string sanitize_atom(const std::string& name);

}  // namespace shapfold
