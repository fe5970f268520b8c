#include "edm/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

namespace edm {

const char* to_string(Comparator cmp) {
    return cmp == Comparator::Greater ? ">" : ">=";
}

namespace {

enum class Tok {
    Ident, Number, LBrace, RBrace, LParen, RParen,
    Colon, Amp, Pipe, Arrow, Comma, Greater, GreaterEq, Equals, End,
};

struct Token {
    Tok kind;
    std::string text;
    double number = 0;
    SourceSpan span;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Colon: return "':'";
        case Tok::Amp: return "'&'";
        case Tok::Pipe: return "'|'";
        case Tok::Arrow: return "'->'";
        case Tok::Comma: return "','";
        case Tok::Greater: return "'>'";
        case Tok::GreaterEq: return "'>='";
        case Tok::Equals: return "'='";
        case Tok::End: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= text_.size()) {
                out.push_back({Tok::End, "", 0, {line_, col_, 0}});
                return out;
            }
            out.push_back(next_token());
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') { ++line_; col_ = 1; }
        else ++col_;
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    Token next_token() {
        const SourceSpan start{line_, col_, 0};
        char c = text_[pos_];
        auto single = [&](Tok kind) {
            advance();
            return Token{kind, std::string(1, c), 0, {start.line, start.column, 1}};
        };
        switch (c) {
            case '{': return single(Tok::LBrace);
            case '}': return single(Tok::RBrace);
            case '(': return single(Tok::LParen);
            case ')': return single(Tok::RParen);
            case ':': return single(Tok::Colon);
            case '&': return single(Tok::Amp);
            case '|': return single(Tok::Pipe);
            case ',': return single(Tok::Comma);
            case '=': return single(Tok::Equals);
            case '>':
                advance();
                if (pos_ < text_.size() && text_[pos_] == '=') {
                    advance();
                    return {Tok::GreaterEq, ">=", 0, {start.line, start.column, 2}};
                }
                return {Tok::Greater, ">", 0, {start.line, start.column, 1}};
            case '-':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                    advance(); advance();
                    return {Tok::Arrow, "->", 0, {start.line, start.column, 2}};
                }
                if (pos_ + 1 < text_.size() &&
                    std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
                    return lex_number(start);
                throw EdmError(ErrorKind::SyntaxError,
                               "unexpected character '-'",
                               {start.line, start.column, 1});
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(start);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_')) {
                word += text_[pos_];
                advance();
            }
            return {Tok::Ident, word, 0,
                    {start.line, start.column, static_cast<int>(word.size())}};
        }
        throw EdmError(ErrorKind::SyntaxError,
                       std::string("unexpected character '") + c + "'",
                       {start.line, start.column, 1});
    }

    Token lex_number(SourceSpan start) {
        std::string lit;
        if (text_[pos_] == '-') { lit += '-'; advance(); }
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '.')) {
            lit += text_[pos_];
            advance();
        }
        char* end = nullptr;
        double value = std::strtod(lit.c_str(), &end);
        if (end != lit.c_str() + lit.size())
            throw EdmError(ErrorKind::SyntaxError, "malformed number '" + lit + "'",
                           {start.line, start.column, static_cast<int>(lit.size())});
        return {Tok::Number, lit, value,
                {start.line, start.column, static_cast<int>(lit.size())}};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool is_keyword(const std::string& word) {
    static const std::set<std::string> kw{"model", "referent", "erf", "rl", "ad",
                                          "term", "trapezoid", "universe",
                                          "ferr", "ferd", "rr", "cf"};
    return kw.count(word) > 0;
}

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

    ReferentDocument parse_document() {
        ReferentDocument doc;
        const Token& head = expect(Tok::Ident, "'model' or 'referent'");
        if (head.text != "model" && head.text != "referent")
            fail(head, "'model' or 'referent'");
        doc.model.name = expect_name("model name");
        expect(Tok::LBrace, "'{'");
        while (!at(Tok::RBrace)) parse_item(doc);
        expect(Tok::RBrace, "'}'");
        expect(Tok::End, "end of input");
        return doc;
    }

private:
    const Token& peek() const { return tokens_[index_]; }
    bool at(Tok kind) const { return peek().kind == kind; }

    [[noreturn]] void fail(const Token& got, const std::string& expected) {
        throw EdmError(ErrorKind::SyntaxError,
                       "expected " + expected + ", got " + tok_name(got.kind) +
                           (got.text.empty() ? "" : " '" + got.text + "'"),
                       got.span);
    }

    const Token& expect(Tok kind, const std::string& expected) {
        if (!at(kind)) fail(peek(), expected);
        return tokens_[index_++];
    }

    std::string expect_name(const std::string& what) {
        const Token& tok = expect(Tok::Ident, what);
        if (is_keyword(tok.text)) fail(tok, what + " (keyword not allowed)");
        return tok.text;
    }

    bool accept_keyword(const char* word) {
        if (at(Tok::Ident) && peek().text == word) { ++index_; return true; }
        return false;
    }

    double expect_number() { return expect(Tok::Number, "number").number; }

    Degree expect_degree(const char* what) {
        const Token& tok = expect(Tok::Number, "number");
        if (tok.number < 0.0 || tok.number > 1.0)
            throw EdmError(ErrorKind::NumericLiteralOutOfRange,
                           std::string(what) + " " + tok.text + " outside [0,1]",
                           tok.span);
        return Degree(tok.number);
    }

    void parse_item(ReferentDocument& doc) {
        const Token& tok = peek();
        if (tok.kind != Tok::Ident) fail(tok, "a declaration keyword");
        if (tok.text == "erf") parse_variable(doc.model, VarKind::InputErf);
        else if (tok.text == "rl") parse_variable(doc.model, VarKind::InternalRl);
        else if (tok.text == "ad") parse_variable(doc.model, VarKind::OutputAd);
        else if (tok.text == "ferr") parse_rule(doc.model.ferrs);
        else if (tok.text == "ferd") parse_rule(doc.model.ferds);
        else if (tok.text == "rr") parse_reasoning_rule(doc);
        else fail(tok, "'erf', 'rl', 'ad', 'ferr', 'ferd' or 'rr'");
    }

    void parse_variable(EdmModel& model, VarKind kind) {
        ++index_; // kind keyword
        LinguisticVariable var;
        var.kind = kind;
        const Token& name_tok = peek();
        var.name = expect_name("variable name");
        if (model.find_variable(var.name))
            throw EdmError(ErrorKind::DuplicateDeclaration,
                           "variable '" + var.name + "' already declared",
                           name_tok.span);
        if (!accept_keyword("universe")) fail(peek(), "'universe'");
        var.universe_min = expect_number();
        var.universe_max = expect_number();
        expect(Tok::LBrace, "'{'");
        while (!at(Tok::RBrace)) {
            if (!accept_keyword("term")) fail(peek(), "'term' or '}'");
            Term term;
            const Token& term_tok = peek();
            term.name = expect_name("term name");
            if (var.find_term(term.name))
                throw EdmError(ErrorKind::DuplicateDeclaration,
                               "term '" + term.name + "' already declared in '" +
                                   var.name + "'",
                               term_tok.span);
            if (accept_keyword("trapezoid")) {
                TrapezoidMF mf;
                mf.a = expect_number();
                mf.b = expect_number();
                mf.c = expect_number();
                mf.d = expect_number();
                term.mf = mf;
            }
            var.terms.push_back(std::move(term));
        }
        expect(Tok::RBrace, "'}'");
        model.variables.push_back(std::move(var));
    }

    Proposition parse_proposition() {
        Proposition p;
        p.variable = expect_name("variable name");
        expect(Tok::LParen, "'('");
        p.term = expect_name("term name");
        expect(Tok::RParen, "')'");
        return p;
    }

    // expr := conj ('|' conj)* ; conj := atom ('&' atom)* ;
    // atom := proposition | '(' expr ')'. The result is kept in DNF,
    // distributing '&' over parenthesized disjunctions.
    using Dnf = std::vector<std::vector<Proposition>>;

    Dnf parse_or_expr() {
        Dnf clauses = parse_and_expr();
        while (at(Tok::Pipe)) {
            ++index_;
            Dnf rhs = parse_and_expr();
            clauses.insert(clauses.end(), rhs.begin(), rhs.end());
        }
        return clauses;
    }

    Dnf parse_and_expr() {
        Dnf acc = parse_atom();
        while (at(Tok::Amp)) {
            ++index_;
            Dnf rhs = parse_atom();
            Dnf product;
            for (const auto& left : acc)
                for (const auto& right : rhs) {
                    std::vector<Proposition> clause = left;
                    clause.insert(clause.end(), right.begin(), right.end());
                    product.push_back(std::move(clause));
                }
            acc = std::move(product);
        }
        return acc;
    }

    Dnf parse_atom() {
        if (at(Tok::LParen)) {
            ++index_;
            Dnf inner = parse_or_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        return {{parse_proposition()}};
    }

    void parse_rule(std::vector<EthicalRule>& rules) {
        ++index_; // ferr/ferd keyword
        EthicalRule rule;
        const Token& name_tok = peek();
        rule.name = expect_name("rule name");
        rule.src = name_tok.span;
        if (accept_keyword("cf")) rule.cf = expect_degree("certainty factor");
        expect(Tok::Colon, "':'");
        rule.antecedent = parse_or_expr();
        expect(Tok::Arrow, "'->'");
        rule.consequents.push_back(parse_proposition());
        while (at(Tok::Comma)) {
            ++index_;
            rule.consequents.push_back(parse_proposition());
        }
        rules.push_back(std::move(rule));
    }

    void parse_reasoning_rule(ReferentDocument& doc) {
        ++index_; // rr keyword
        ReasoningRule rr;
        const Token& name_tok = peek();
        rr.name = expect_name("reasoning rule name");
        rr.src = name_tok.span;
        expect(Tok::Colon, "':'");
        while (true) {
            Proposition p = parse_proposition();
            expect(Tok::Equals, "'='");
            rr.premises.emplace_back(std::move(p), expect_degree("premise degree"));
            if (at(Tok::Amp)) { ++index_; continue; }
            break;
        }
        expect(Tok::Arrow, "'->'");
        rr.conclusion = parse_proposition();
        if (at(Tok::GreaterEq)) { rr.cmp = Comparator::GreaterEqual; ++index_; }
        else if (at(Tok::Greater)) { rr.cmp = Comparator::Greater; ++index_; }
        else fail(peek(), "'>' or '>='");
        rr.threshold = expect_degree("threshold");
        doc.reasoning_rules.push_back(std::move(rr));
    }

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
};

void check_rule_names(const ReferentDocument& doc) {
    std::set<std::string> names;
    for (const EthicalRule* r : doc.model.all_rules())
        if (!names.insert(r->name).second)
            throw EdmError(ErrorKind::DuplicateDeclaration,
                           "rule '" + r->name + "' already declared", r->src);
    std::set<std::string> rr_names;
    for (const ReasoningRule& rr : doc.reasoning_rules)
        if (!rr_names.insert(rr.name).second)
            throw EdmError(ErrorKind::DuplicateDeclaration,
                           "reasoning rule '" + rr.name + "' already declared",
                           rr.src);
}

// shortest decimal form that parses back to the same double
std::string format_number(double v) {
    char buffer[32];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
    if (ec != std::errc{}) return std::to_string(v);
    return std::string(buffer, end);
}

} // namespace

EdmModel parse_model(std::string_view text) {
    return parse_referent(text).model;
}

ReferentDocument parse_referent(std::string_view text) {
    Parser parser(text);
    ReferentDocument doc = parser.parse_document();
    check_rule_names(doc);
    doc.model = resolve_model(std::move(doc.model));
    return doc;
}

std::string serialize_model(const EdmModel& model) {
    std::ostringstream os;
    os << "model " << model.name << " {\n";
    for (const LinguisticVariable& var : model.variables) {
        os << "  " << to_string(var.kind) << " " << var.name << " universe "
           << format_number(var.universe_min) << " "
           << format_number(var.universe_max) << " {\n";
        for (const Term& t : var.terms) {
            os << "    term " << t.name;
            if (t.mf)
                os << " trapezoid " << format_number(t.mf->a) << " "
                   << format_number(t.mf->b) << " " << format_number(t.mf->c)
                   << " " << format_number(t.mf->d);
            os << "\n";
        }
        os << "  }\n";
    }
    auto emit_rules = [&](const std::vector<EthicalRule>& rules, const char* kw) {
        for (const EthicalRule& r : rules) {
            os << "  " << kw << " " << r.name << " cf "
               << format_number(r.cf.value()) << " : ";
            for (std::size_t ci = 0; ci < r.antecedent.size(); ++ci) {
                if (ci) os << " | ";
                os << "(";
                for (std::size_t pi = 0; pi < r.antecedent[ci].size(); ++pi) {
                    if (pi) os << " & ";
                    os << r.antecedent[ci][pi].text();
                }
                os << ")";
            }
            os << " -> ";
            for (std::size_t i = 0; i < r.consequents.size(); ++i) {
                if (i) os << ", ";
                os << r.consequents[i].text();
            }
            os << "\n";
        }
    };
    emit_rules(model.ferrs, "ferr");
    emit_rules(model.ferds, "ferd");
    os << "}\n";
    return os.str();
}

} // namespace edm
