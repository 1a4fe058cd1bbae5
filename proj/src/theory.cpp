#include "shapfold/theory.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace shapfold {

int DefaultTheory::clause_count() const {
    int n = static_cast<int>(defaults.size());
    for (const auto& cs : abnormals) n += static_cast<int>(cs.size());
    return n;
}

int DefaultTheory::allocate_ab() {
    const int id = static_cast<int>(abnormals.size());
    abnormals.emplace_back();
    ab_names.push_back("ab" + std::to_string(id));
    return id;
}

void DefaultTheory::prune_unused_abnormals() {
    std::vector<int> remap(abnormals.size(), -1);
    std::vector<int> order;
    // Walk bodies in clause order; abnormality references recurse, so process
    // a work list seeded from the defaults.
    std::vector<const Clause*> work;
    for (const Clause& c : defaults) work.push_back(&c);
    for (std::size_t w = 0; w < work.size(); ++w) {
        for (const Literal& lit : work[w]->body) {
            if (lit.kind != Literal::Kind::NafAb) continue;
            const auto ab = static_cast<std::size_t>(lit.index);
            if (remap[ab] != -1) continue;
            remap[ab] = static_cast<int>(order.size());
            order.push_back(lit.index);
            for (const Clause& c : abnormals[ab]) work.push_back(&c);
        }
    }
    std::vector<std::vector<Clause>> kept_clauses;
    std::vector<std::string> kept_names;
    for (int old_id : order) {
        const auto idx = static_cast<std::size_t>(old_id);
        kept_clauses.push_back(std::move(abnormals[idx]));
        // Renumber machine-generated names; keep custom ones (e.g. ab_bird).
        kept_names.push_back(ab_names[idx] == "ab" + std::to_string(old_id)
                                 ? "ab" + std::to_string(kept_clauses.size() - 1)
                                 : ab_names[idx]);
    }
    abnormals = std::move(kept_clauses);
    ab_names = std::move(kept_names);
    for (auto& cs : abnormals)
        for (Clause& c : cs) c.head.ab_index = remap[static_cast<std::size_t>(c.head.ab_index)];
    auto rewrite = [&](Clause& c) {
        for (Literal& lit : c.body)
            if (lit.kind == Literal::Kind::NafAb) lit.index = remap[static_cast<std::size_t>(lit.index)];
    };
    for (Clause& c : defaults) rewrite(c);
    for (auto& cs : abnormals)
        for (Clause& c : cs) rewrite(c);
}

std::string sanitize_atom(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        else
            out.push_back('_');
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out.insert(0, "f_");
    return out;
}

namespace {

bool plain_atom(const std::string& s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

std::string render_value(const std::string& v) {
    if (plain_atom(v)) return v;
    // digits (possibly signed/decimal) pass unquoted as numeric atoms
    bool numeric = !v.empty();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const char c = v[i];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
            (i == 0 && (c == '-' || c == '+')))
            continue;
        numeric = false;
        break;
    }
    if (numeric) return v;
    std::string out = "'";
    for (char c : v) {
        if (c == '\'') out += "\\'";
        else out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

std::string render_literal(const DefaultTheory& th, const Literal& lit) {
    if (lit.kind == Literal::Kind::NafAb)
        return "not " + th.ab_names[static_cast<std::size_t>(lit.index)] + "(A)";
    const Item& item = th.items[static_cast<std::size_t>(lit.index)];
    std::string test = sanitize_atom(item.feature);
    if (item.value == "true")
        test += "(A)";
    else
        test += "(A," + render_value(item.value) + ")";
    if (item.polarity == Polarity::Absent) return "not " + test;
    return test;
}

std::string render_clause(const DefaultTheory& th, const Clause& c) {
    std::string head = c.head.is_target ? th.target_name
                                        : th.ab_names[static_cast<std::size_t>(c.head.ab_index)];
    std::string out = head + "(A) :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        if (i) out += ", ";
        out += render_literal(th, c.body[i]);
    }
    out += ".";
    return out;
}

}  // namespace

std::string render_theory(const DefaultTheory& theory) {
    std::ostringstream os;
    for (const auto& c : theory.defaults) os << render_clause(theory, c) << '\n';
    for (std::size_t ab = 0; ab < theory.abnormals.size(); ++ab)
        for (const auto& c : theory.abnormals[ab]) os << render_clause(theory, c) << '\n';
    return os.str();
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
    enum class Kind { Atom, Quoted, Variable, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        if (pos_ >= text_.size()) return t;
        const char c = text_[pos_];
        if (c == '\'') {
            ++pos_;
            t.kind = Token::Kind::Quoted;
            while (pos_ < text_.size() && text_[pos_] != '\'') {
                if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
                if (text_[pos_] == '\n') ++line_;
                t.text.push_back(text_[pos_++]);
            }
            if (pos_ >= text_.size()) throw ParseError(err("unterminated quoted atom"));
            ++pos_;
            return t;
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Token::Kind::Variable;
            while (pos_ < text_.size() && word_char(text_[pos_])) t.text.push_back(text_[pos_++]);
            return t;
        }
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
            t.kind = Token::Kind::Atom;
            while (pos_ < text_.size() &&
                   (word_char(text_[pos_]) || text_[pos_] == '.' || text_[pos_] == '-' ||
                    text_[pos_] == '+')) {
                // a '.' only continues the token when followed by a digit
                if (text_[pos_] == '.' &&
                    !(pos_ + 1 < text_.size() &&
                      std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))))
                    break;
                t.text.push_back(text_[pos_++]);
            }
            return t;
        }
        if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
            t.kind = Token::Kind::Punct;
            t.text = ":-";
            pos_ += 2;
            return t;
        }
        if (c == '(' || c == ')' || c == ',' || c == '.') {
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, c);
            ++pos_;
            return t;
        }
        throw ParseError(err(std::string("unexpected character '") + c + "'"));
    }

    int line() const { return line_; }
    std::string err(const std::string& msg) const {
        return "theory line " + std::to_string(line_) + ": " + msg;
    }

private:
    static bool word_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }
    void skip_ws() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '%') {  // comment to end of line
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }
    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

struct RawLiteral {
    bool negated = false;
    std::string pred;
    bool has_value = false;
    std::string value;
    int line = 0;
};

struct RawClause {
    std::string head;
    std::vector<RawLiteral> body;
    int line = 0;
};

}  // namespace

DefaultTheory parse_theory(const std::string& text) {
    Lexer lex(text);
    Token tok = lex.next();

    auto expect = [&](const std::string& p) {
        if (tok.kind != Token::Kind::Punct || tok.text != p)
            throw ParseError("theory line " + std::to_string(tok.line) + ": expected '" + p +
                             "', got '" + tok.text + "'");
        tok = lex.next();
    };
    auto atom = [&](const char* what) {
        if (tok.kind != Token::Kind::Atom && tok.kind != Token::Kind::Quoted)
            throw ParseError("theory line " + std::to_string(tok.line) + ": expected " + what);
        std::string s = tok.text;
        tok = lex.next();
        return s;
    };

    std::vector<RawClause> clauses;
    while (tok.kind != Token::Kind::End) {
        RawClause rc;
        rc.line = tok.line;
        rc.head = atom("clause head");
        expect("(");
        if (tok.kind != Token::Kind::Variable)
            throw ParseError("theory line " + std::to_string(tok.line) +
                             ": expected a variable in the head");
        tok = lex.next();
        expect(")");
        expect(":-");
        for (;;) {
            RawLiteral lit;
            lit.line = tok.line;
            if (tok.kind == Token::Kind::Atom && tok.text == "not") {
                lit.negated = true;
                tok = lex.next();
            }
            lit.pred = atom("a body literal");
            expect("(");
            if (tok.kind != Token::Kind::Variable)
                throw ParseError("theory line " + std::to_string(tok.line) +
                                 ": expected a variable as first argument");
            tok = lex.next();
            if (tok.kind == Token::Kind::Punct && tok.text == ",") {
                tok = lex.next();
                lit.has_value = true;
                lit.value = atom("a value");
            }
            expect(")");
            rc.body.push_back(std::move(lit));
            if (tok.kind == Token::Kind::Punct && tok.text == ",") {
                tok = lex.next();
                continue;
            }
            break;
        }
        expect(".");
        if (rc.body.empty())
            throw ParseError("theory line " + std::to_string(rc.line) + ": empty clause body");
        clauses.push_back(std::move(rc));
    }
    if (clauses.empty()) throw ParseError("theory: no clauses");

    DefaultTheory th;
    th.target_name = clauses[0].head;

    // heads other than the target define abnormality predicates
    std::map<std::string, int> ab_ids;
    for (const auto& rc : clauses) {
        if (rc.head == th.target_name) continue;
        if (!ab_ids.count(rc.head)) {
            ab_ids[rc.head] = static_cast<int>(th.abnormals.size());
            th.abnormals.emplace_back();
            th.ab_names.push_back(rc.head);
        }
    }

    std::map<std::pair<std::string, std::string>, std::pair<int, int>> item_ids;  // -> (present,absent)
    auto item_literal = [&](const RawLiteral& lit) {
        const std::string value = lit.has_value ? lit.value : "true";
        auto key = std::make_pair(lit.pred, value);
        auto [it, inserted] = item_ids.try_emplace(key, std::make_pair(-1, -1));
        int& slot = lit.negated ? it->second.second : it->second.first;
        if (slot < 0) {
            slot = static_cast<int>(th.items.size());
            th.items.push_back(
                Item{lit.pred, value, lit.negated ? Polarity::Absent : Polarity::Present});
        }
        return Literal{Literal::Kind::ItemTest, slot};
    };

    for (const auto& rc : clauses) {
        Clause c;
        if (rc.head == th.target_name) {
            c.head = ClauseHead{true, -1};
        } else {
            c.head = ClauseHead{false, ab_ids.at(rc.head)};
        }
        for (const auto& lit : rc.body) {
            if (!lit.has_value && ab_ids.count(lit.pred)) {
                if (!lit.negated)
                    throw ParseError("theory line " + std::to_string(lit.line) +
                                     ": abnormality predicate '" + lit.pred +
                                     "' must appear under negation-as-failure");
                c.body.push_back(Literal{Literal::Kind::NafAb, ab_ids.at(lit.pred)});
            } else if (!lit.has_value && lit.negated && lit.pred.rfind("ab", 0) == 0) {
                throw ParseError("theory line " + std::to_string(lit.line) +
                                 ": abnormality predicate '" + lit.pred +
                                 "' has no defining clause");
            } else {
                c.body.push_back(item_literal(lit));
            }
        }
        if (c.head.is_target)
            th.defaults.push_back(std::move(c));
        else
            th.abnormals[static_cast<std::size_t>(c.head.ab_index)].push_back(std::move(c));
    }

    // stratification check: the ab-reference graph must be acyclic
    {
        const int n = static_cast<int>(th.abnormals.size());
        std::vector<int> state(static_cast<std::size_t>(n), 0);
        auto dfs = [&](auto&& self, int ab) -> void {
            state[static_cast<std::size_t>(ab)] = 1;
            for (const auto& c : th.abnormals[static_cast<std::size_t>(ab)])
                for (const auto& l : c.body)
                    if (l.kind == Literal::Kind::NafAb) {
                        if (state[static_cast<std::size_t>(l.index)] == 1)
                            throw ParseError("theory: cyclic abnormality reference through '" +
                                             th.ab_names[static_cast<std::size_t>(l.index)] + "'");
                        if (state[static_cast<std::size_t>(l.index)] == 0) self(self, l.index);
                    }
            state[static_cast<std::size_t>(ab)] = 2;
        };
        for (int ab = 0; ab < n; ++ab)
            if (state[static_cast<std::size_t>(ab)] == 0) dfs(dfs, ab);
    }
    return th;
}

DefaultTheory parse_theory_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_theory(buf.str());
}

std::vector<int> bind_items(const DefaultTheory& theory, const std::vector<Item>& schema) {
    std::map<std::pair<std::string, std::string>, int> index;
    for (std::size_t i = 0; i < schema.size(); ++i)
        index[{sanitize_atom(schema[i].feature), schema[i].value}] = static_cast<int>(i);
    std::vector<int> binding;
    binding.reserve(theory.items.size());
    for (const auto& it : theory.items) {
        auto found = index.find({sanitize_atom(it.feature), it.value});
        if (found == index.end())
            throw DataError("schema has no item " + it.feature + "=" + it.value);
        binding.push_back(found->second);
    }
    return binding;
}

bool covers_example(const DefaultTheory& theory, const Clause& clause,
                    const std::uint8_t* bits, const std::vector<int>& binding) {
    for (const auto& lit : clause.body) {
        if (lit.kind == Literal::Kind::ItemTest) {
            const Item& item = theory.items[static_cast<std::size_t>(lit.index)];
            const std::uint8_t bit = bits[binding[static_cast<std::size_t>(lit.index)]];
            if (item.polarity == Polarity::Present ? !bit : bit) return false;
        } else {
            if (lit.index < 0 || static_cast<std::size_t>(lit.index) >= theory.abnormals.size())
                throw DataError("dangling abnormality reference ab" + std::to_string(lit.index));
            for (const auto& ab_clause : theory.abnormals[static_cast<std::size_t>(lit.index)])
                if (covers_example(theory, ab_clause, bits, binding)) return false;
        }
    }
    return true;
}

std::vector<int> covers(const DefaultTheory& theory, const Clause& clause,
                        const std::vector<int>& ids, const Dataset& dataset,
                        const std::vector<int>& binding) {
    std::vector<int> out;
    for (int id : ids)
        if (covers_example(theory, clause, dataset.examples[static_cast<std::size_t>(id)].bits.data(),
                           binding))
            out.push_back(id);
    return out;
}

bool classify(const DefaultTheory& theory, std::span<const std::uint8_t> bits,
              const std::vector<int>& binding) {
    return std::any_of(theory.defaults.begin(), theory.defaults.end(), [&](const Clause& c) {
        return covers_example(theory, c, bits.data(), binding);
    });
}

}  // namespace shapfold
