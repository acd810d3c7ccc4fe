#include "az/expr.hpp"

#include <cctype>

namespace az {

namespace {

struct Token {
    enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
    Kind kind;
    std::string text;
    size_t offset;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

private:
    const std::string& text_;
    size_t pos_ = 0;
    Token current_;

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        size_t start = pos_;
        if (pos_ >= text_.size()) {
            current_ = {Token::Kind::End, "", start};
            return;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t end = pos_;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
            current_ = {Token::Kind::Number, text_.substr(pos_, end - pos_), start};
            pos_ = end;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            current_ = {Token::Kind::Ident, text_.substr(pos_, end - pos_), start};
            pos_ = end;
            return;
        }
        Token::Kind k;
        switch (c) {
            case '+': k = Token::Kind::Plus; break;
            case '-': k = Token::Kind::Minus; break;
            case '*': k = Token::Kind::Star; break;
            case '/': k = Token::Kind::Slash; break;
            case '^': k = Token::Kind::Caret; break;
            case '(': k = Token::Kind::LParen; break;
            case ')': k = Token::Kind::RParen; break;
            case ',': k = Token::Kind::Comma; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
        current_ = {k, std::string(1, c), start};
        ++pos_;
    }
};

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    ExprNode parse() {
        ExprNode e = sum();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End) throw ParseError("unexpected '" + t.text + "'", t.offset);
        return e;
    }

private:
    Lexer lex_;

    ExprNode sum() {
        ExprNode left = product();
        while (true) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Kind::Plus || t.kind == Token::Kind::Minus) {
                Token op = lex_.next();
                ExprNode right = product();
                ExprNode node;
                node.kind = op.kind == Token::Kind::Plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub;
                node.offset = op.offset;
                node.children = {std::move(left), std::move(right)};
                left = std::move(node);
            } else {
                return left;
            }
        }
    }

    ExprNode product() {
        ExprNode left = unary();
        while (true) {
            const Token& t = lex_.peek();
            if (t.kind == Token::Kind::Star || t.kind == Token::Kind::Slash) {
                Token op = lex_.next();
                ExprNode right = unary();
                ExprNode node;
                node.kind = op.kind == Token::Kind::Star ? ExprNode::Kind::Mul : ExprNode::Kind::Div;
                node.offset = op.offset;
                node.children = {std::move(left), std::move(right)};
                left = std::move(node);
            } else {
                return left;
            }
        }
    }

    // `^` binds tighter than unary minus, so "-x^2" is -(x^2); an exponent
    // operand may itself start with a unary minus ("x^-2").
    ExprNode unary() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Minus) {
            Token op = lex_.next();
            ExprNode node;
            node.kind = ExprNode::Kind::Neg;
            node.offset = op.offset;
            node.children = {unary()};
            return node;
        }
        return power();
    }

    ExprNode power() {
        ExprNode base = primary();
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Caret) {
            Token op = lex_.next();
            ExprNode expo = unary();  // right-associative via recursion
            ExprNode node;
            node.kind = ExprNode::Kind::Pow;
            node.offset = op.offset;
            node.children = {std::move(base), std::move(expo)};
            return node;
        }
        return base;
    }

    ExprNode primary() {
        Token t = lex_.next();
        switch (t.kind) {
            case Token::Kind::Number: {
                ExprNode node;
                node.kind = ExprNode::Kind::Number;
                node.value = Rational(Integer(t.text));
                node.offset = t.offset;
                return node;
            }
            case Token::Kind::Ident: {
                if (t.text == "exp") {
                    const Token& open = lex_.peek();
                    if (open.kind != Token::Kind::LParen)
                        throw ParseError("expected '(' after exp", open.offset);
                    lex_.next();
                    ExprNode arg = sum();
                    const Token& close = lex_.peek();
                    if (close.kind != Token::Kind::RParen)
                        throw ParseError("expected ')'", close.offset);
                    lex_.next();
                    ExprNode node;
                    node.kind = ExprNode::Kind::Exp;
                    node.offset = t.offset;
                    node.children = {std::move(arg)};
                    return node;
                }
                ExprNode node;
                node.kind = ExprNode::Kind::Symbol;
                node.name = t.text;
                node.offset = t.offset;
                return node;
            }
            case Token::Kind::LParen: {
                ExprNode inner = sum();
                const Token& close = lex_.peek();
                if (close.kind != Token::Kind::RParen)
                    throw ParseError("expected ')'", close.offset);
                lex_.next();
                return inner;
            }
            default:
                throw ParseError("expected an operand, found '" +
                                     (t.text.empty() ? std::string("end of input") : t.text) + "'",
                                 t.offset);
        }
    }
};

}  // namespace

std::string ExprNode::describe() const {
    switch (kind) {
        case Kind::Number: return value.str();
        case Kind::Symbol: return name;
        case Kind::Add: return "(" + children[0].describe() + " + " + children[1].describe() + ")";
        case Kind::Sub: return "(" + children[0].describe() + " - " + children[1].describe() + ")";
        case Kind::Mul: return "(" + children[0].describe() + " * " + children[1].describe() + ")";
        case Kind::Div: return "(" + children[0].describe() + " / " + children[1].describe() + ")";
        case Kind::Pow: return "(" + children[0].describe() + ")^(" + children[1].describe() + ")";
        case Kind::Neg: return "-" + children[0].describe();
        case Kind::Exp: return "exp(" + children[0].describe() + ")";
    }
    return "?";
}

ExprNode parse_expression(const std::string& text) { return Parser(text).parse(); }

RatFunc expr_to_ratfunc(const ExprNode& node, const std::set<std::string>& allowed) {
    switch (node.kind) {
        case ExprNode::Kind::Number: return RatFunc::constant(node.value);
        case ExprNode::Kind::Symbol:
            if (!allowed.count(node.name)) throw UnknownSymbol(node.name, node.offset);
            return RatFunc::variable(node.name);
        case ExprNode::Kind::Add:
            return expr_to_ratfunc(node.children[0], allowed) +
                   expr_to_ratfunc(node.children[1], allowed);
        case ExprNode::Kind::Sub:
            return expr_to_ratfunc(node.children[0], allowed) -
                   expr_to_ratfunc(node.children[1], allowed);
        case ExprNode::Kind::Mul:
            return expr_to_ratfunc(node.children[0], allowed) *
                   expr_to_ratfunc(node.children[1], allowed);
        case ExprNode::Kind::Div:
            return expr_to_ratfunc(node.children[0], allowed) /
                   expr_to_ratfunc(node.children[1], allowed);
        case ExprNode::Kind::Neg: return -expr_to_ratfunc(node.children[0], allowed);
        case ExprNode::Kind::Pow: {
            RatFunc base = expr_to_ratfunc(node.children[0], allowed);
            RatFunc expo = expr_to_ratfunc(node.children[1], allowed);
            if (!expo.is_constant())
                throw NotRational("non-constant exponent in " + node.describe());
            Rational e = expo.constant_value();
            if (den(e) != 1)
                throw NotRational("non-integer exponent in " + node.describe());
            Integer ei = num(e);
            if (ei > 1000000 || ei < -1000000)
                throw NotRational("exponent out of range in " + node.describe());
            return base.pow(static_cast<long>(ei));
        }
        case ExprNode::Kind::Exp:
            throw NotRational("exp(...) is not a rational expression: " + node.describe());
    }
    throw MathError("corrupt expression node");
}

RatFunc parse_ratfunc(const std::string& text, const std::set<std::string>& allowed) {
    return expr_to_ratfunc(parse_expression(text), allowed);
}

}  // namespace az
