#include "maltmaj/text_format.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <vector>

#include "maltmaj/errors.hpp"

namespace maltmaj {

namespace {

struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
};

bool is_punct(char c) {
    return c == '{' || c == '}' || c == '(' || c == ')' || c == ',';
}

struct Lexed {
    std::vector<std::vector<Token>> lines;  // non-empty, non-comment lines only
    std::size_t last_line = 0;
};

Lexed lex(std::string_view text) {
    Lexed out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);

        std::vector<Token> tokens;
        std::size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i < line.size() && line[i] != '#') {
            while (i < line.size()) {
                const char c = line[i];
                if (std::isspace(static_cast<unsigned char>(c))) {
                    ++i;
                } else if (is_punct(c)) {
                    tokens.push_back({std::string(1, c), line_no, i + 1});
                    ++i;
                } else {
                    const std::size_t start = i;
                    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
                           !is_punct(line[i]))
                        ++i;
                    tokens.push_back({std::string(line.substr(start, i - start)), line_no, start + 1});
                }
            }
        }
        if (!tokens.empty())
            out.lines.push_back(std::move(tokens));
        if (end == text.size()) {
            if (line.empty())
                --line_no;  // nothing after the final newline
            break;
        }
        pos = end + 1;
    }
    out.last_line = line_no;
    return out;
}

[[noreturn]] void fail(const Token& t, const std::string& message) {
    throw ParseError(t.line, t.column, message);
}

std::size_t parse_number(const Token& t) {
    std::size_t value = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        fail(t, "expected a non-negative integer, got '" + t.text + "'");
    return value;
}

Element parse_element(const Token& t, const Domain& d) {
    const std::size_t v = parse_number(t);
    if (v >= d.size())
        fail(t, "element " + t.text + " is outside the domain of size " + std::to_string(d.size()));
    return static_cast<Element>(v);
}

Domain parse_domain_size(const Token& t) {
    const std::size_t n = parse_number(t);
    if (n == 0 || n > Domain::kMaxSize)
        fail(t, "domain size must be between 1 and " + std::to_string(Domain::kMaxSize));
    return Domain(n);
}

bool is_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'' || c == '.'))
            return false;
    return true;
}

void expect_keyword(const Token& t, const char* keyword) {
    if (t.text != keyword)
        fail(t, std::string("expected '") + keyword + "', got '" + t.text + "'");
}

void expect_line_length(const std::vector<Token>& line, std::size_t count, const char* what) {
    if (line.size() != count) {
        const Token& t = line.size() > count ? line[count] : line.back();
        fail(t, std::string("malformed ") + what + " line: expected " + std::to_string(count) + " fields, got " +
                    std::to_string(line.size()));
    }
}

// Flat token cursor for the statement-oriented language format.
class Cursor {
public:
    Cursor(const Lexed& lexed) : eof_line_(lexed.last_line + 1) {
        for (const auto& line : lexed.lines)
            tokens_.insert(tokens_.end(), line.begin(), line.end());
    }

    bool done() const { return pos_ >= tokens_.size(); }

    const Token& peek() const {
        if (done())
            throw ParseError(eof_line_, 1, "unexpected end of input");
        return tokens_[pos_];
    }

    const Token& next() {
        const Token& t = peek();
        ++pos_;
        return t;
    }

    const Token& expect(const char* text) {
        const Token& t = next();
        expect_keyword(t, text);
        return t;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t eof_line_;
};

}  // namespace

NamedOperation parse_operation(std::string_view text) {
    const Lexed lexed = lex(text);
    const auto& lines = lexed.lines;
    if (lines.empty())
        throw ParseError(1, 1, "empty operation file");
    expect_keyword(lines[0][0], "domain");
    expect_line_length(lines[0], 2, "domain");
    const Domain domain = parse_domain_size(lines[0][1]);

    if (lines.size() < 2)
        throw ParseError(lexed.last_line + 1, 1, "missing 'op <name>' line");
    expect_keyword(lines[1][0], "op");
    expect_line_length(lines[1], 2, "op");
    if (!is_name(lines[1][1].text))
        fail(lines[1][1], "invalid operation name '" + lines[1][1].text + "'");

    const std::size_t n = domain.size();
    const std::size_t cells = n * n * n;
    const std::size_t entries = lines.size() - 2;
    std::vector<Element> table;
    table.reserve(cells);
    for (std::size_t i = 0; i < entries; ++i) {
        const auto& line = lines[i + 2];
        if (i >= cells)
            fail(line[0], "more than " + std::to_string(cells) + " table entries");
        expect_line_length(line, 4, "table");
        const CellArgs want = cell_args(domain, i);
        const Element x = parse_element(line[0], domain);
        const Element y = parse_element(line[1], domain);
        const Element z = parse_element(line[2], domain);
        if (x != want.x || y != want.y || z != want.z)
            fail(line[0], "table entries must be listed in flattened order; expected " + std::to_string(want.x) +
                              " " + std::to_string(want.y) + " " + std::to_string(want.z));
        table.push_back(parse_element(line[3], domain));
    }
    if (table.size() != cells)
        throw ParseError(lexed.last_line + 1, 1,
                         "incomplete operation table: " + std::to_string(table.size()) + " of " +
                             std::to_string(cells) + " entries");
    return {lines[1][1].text, TernaryOperation(domain, std::move(table))};
}

std::string serialize_operation(const NamedOperation& named) {
    const Domain& d = named.op.domain();
    std::ostringstream os;
    os << "domain " << d.size() << '\n' << "op " << named.name << '\n';
    const auto table = named.op.table();
    for (std::size_t i = 0; i < table.size(); ++i) {
        const CellArgs a = cell_args(d, i);
        os << a.x << ' ' << a.y << ' ' << a.z << ' ' << table[i] << '\n';
    }
    return os.str();
}

Language parse_language(std::string_view text) {
    const Lexed lexed = lex(text);
    if (lexed.lines.empty())
        throw ParseError(1, 1, "empty language file");
    Cursor cur(lexed);
    cur.expect("domain");
    const Domain domain = parse_domain_size(cur.next());
    const std::size_t n = domain.size();

    bool conservative = false;
    if (!cur.done() && cur.peek().text == "conservative") {
        cur.next();
        conservative = true;
    }

    std::vector<NamedRelation> relations;
    std::set<std::string> names;
    while (!cur.done()) {
        cur.expect("rel");
        const Token& name = cur.next();
        if (!is_name(name.text))
            fail(name, "invalid relation name '" + name.text + "'");
        if (!names.insert(name.text).second)
            fail(name, "duplicate relation name '" + name.text + "'");
        const Token& kind = cur.next();
        cur.expect("{");
        if (kind.text == "unary") {
            std::vector<bool> bitmap(n, false);
            while (cur.peek().text != "}") {
                const Token& t = cur.next();
                const Element v = parse_element(t, domain);
                if (bitmap[v])
                    fail(t, "duplicate tuple (" + t.text + ") in relation '" + name.text + "'");
                bitmap[v] = true;
            }
            cur.next();
            relations.push_back({name.text, Relation(domain, 1, std::move(bitmap))});
        } else if (kind.text == "binary") {
            std::vector<bool> bitmap(n * n, false);
            while (cur.peek().text != "}") {
                const Token& open = cur.expect("(");
                const Element a = parse_element(cur.next(), domain);
                cur.expect(",");
                const Element b = parse_element(cur.next(), domain);
                cur.expect(")");
                if (bitmap[a * n + b])
                    fail(open, "duplicate tuple (" + std::to_string(a) + "," + std::to_string(b) + ") in relation '" +
                                   name.text + "'");
                bitmap[a * n + b] = true;
            }
            cur.next();
            relations.push_back({name.text, Relation(domain, 2, std::move(bitmap))});
        } else {
            fail(kind, "relation kind must be 'unary' or 'binary', got '" + kind.text + "'");
        }
    }
    return Language(domain, std::move(relations), conservative);
}

std::string serialize_language(const Language& lang) {
    std::ostringstream os;
    os << "domain " << lang.domain().size() << '\n';
    if (lang.conservative())
        os << "conservative\n";
    for (const auto& [name, rel] : lang.relations()) {
        os << "rel " << name << (rel.arity() == 1 ? " unary {" : " binary {");
        for (std::size_t t : rel.members()) {
            const Tuple tup = rel.tuple(t);
            if (rel.arity() == 1)
                os << ' ' << tup[0];
            else
                os << " (" << tup[0] << ',' << tup[1] << ')';
        }
        os << " }\n";
    }
    return os.str();
}

Instance parse_instance(std::string_view text, const Language& lang) {
    const Lexed lexed = lex(text);
    const auto& lines = lexed.lines;
    if (lines.empty())
        throw ParseError(1, 1, "empty instance file");
    expect_keyword(lines[0][0], "vars");
    expect_line_length(lines[0], 2, "vars");
    const std::size_t m = parse_number(lines[0][1]);

    std::vector<Constraint> constraints;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        expect_keyword(line[0], "constraint");
        if (line.size() != 3 && line.size() != 4)
            fail(line[0], "a constraint line is 'constraint <relname> <i> [<j>]'");
        const Token& name = line[1];
        const Relation* rel = lang.find(name.text);
        if (rel == nullptr)
            fail(name, "unknown relation '" + name.text + "'");
        if (line.size() - 2 != static_cast<std::size_t>(rel->arity()))
            fail(name, "relation '" + name.text + "' has arity " + std::to_string(rel->arity()) + " but " +
                           std::to_string(line.size() - 2) + " variables were given");
        Constraint c{name.text, {}};
        for (std::size_t k = 2; k < line.size(); ++k) {
            const std::size_t v = parse_number(line[k]);
            if (v >= m)
                fail(line[k], "variable " + line[k].text + " out of range for " + std::to_string(m) + " variables");
            c.scope.push_back(v);
        }
        constraints.push_back(std::move(c));
    }
    return Instance(lang, m, std::move(constraints));
}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream os;
    os << "vars " << inst.num_vars() << '\n';
    for (const auto& c : inst.constraints()) {
        os << "constraint " << c.relation;
        for (std::size_t v : c.scope)
            os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

}  // namespace maltmaj
