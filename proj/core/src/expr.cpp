#include "orbitstrata/expr.hpp"

#include <cctype>
#include <sstream>

#include "orbitstrata/errors.hpp"

namespace orbitstrata {

namespace {

struct Token {
    enum class Type { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };
    Type type;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& current() const { return tok_; }

    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_.pos = pos_;
        if (pos_ >= src_.size()) {
            tok_ = {Token::Type::End, "", pos_};
            return;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            tok_ = {Token::Type::Number, src_.substr(start, pos_ - start), start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Type::Ident, src_.substr(start, pos_ - start), start};
            return;
        }
        Token::Type t;
        switch (c) {
            case '+': t = Token::Type::Plus; break;
            case '-': t = Token::Type::Minus; break;
            case '*': t = Token::Type::Star; break;
            case '^': t = Token::Type::Caret; break;
            case '/': t = Token::Type::Slash; break;
            case '(': t = Token::Type::LParen; break;
            case ')': t = Token::Type::RParen; break;
            default:
                throw Error(Error::Kind::Syntax, "unexpected character '" + std::string(1, c) +
                                                     "' at position " + std::to_string(pos_));
        }
        tok_ = {t, std::string(1, c), pos_};
        ++pos_;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
    Token tok_{Token::Type::End, "", 0};
};

class Parser {
public:
    Parser(const std::string& src, ContextPtr ctx, unsigned d)
        : lex_(src), ctx_(std::move(ctx)), d_(d) {}

    Polynomial parse() {
        Polynomial p = expr();
        if (lex_.current().type != Token::Type::End)
            throw err("unexpected trailing input");
        return p;
    }

private:
    Lexer lex_;
    ContextPtr ctx_;
    unsigned d_;

    Error err(const std::string& what) const {
        return Error(Error::Kind::Syntax,
                     what + " at position " + std::to_string(lex_.current().pos));
    }

    Polynomial expr() {
        int sign = 1;
        if (lex_.current().type == Token::Type::Plus) {
            lex_.advance();
        } else if (lex_.current().type == Token::Type::Minus) {
            sign = -1;
            lex_.advance();
        }
        Polynomial acc = term();
        if (sign < 0) acc = -acc;
        while (lex_.current().type == Token::Type::Plus ||
               lex_.current().type == Token::Type::Minus) {
            const bool minus = lex_.current().type == Token::Type::Minus;
            lex_.advance();
            Polynomial t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (lex_.current().type == Token::Type::Star) {
            lex_.advance();
            acc = acc * factor();
        }
        return acc;
    }

    Polynomial factor() {
        Polynomial base = atom();
        if (lex_.current().type == Token::Type::Caret) {
            lex_.advance();
            if (lex_.current().type == Token::Type::Minus)
                throw Error(Error::Kind::NegativeExponent,
                            "negative exponent at position " +
                                std::to_string(lex_.current().pos));
            if (lex_.current().type != Token::Type::Number)
                throw err("expected integer exponent");
            unsigned long e = 0;
            try {
                e = std::stoul(lex_.current().text);
            } catch (const std::exception&) {
                throw err("exponent out of range");
            }
            lex_.advance();
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Polynomial atom() {
        const Token tok = lex_.current();
        switch (tok.type) {
            case Token::Type::Number: {
                lex_.advance();
                BigInt num(tok.text);
                if (lex_.current().type == Token::Type::Slash) {
                    lex_.advance();
                    if (lex_.current().type != Token::Type::Number)
                        throw err("expected denominator");
                    BigInt den(lex_.current().text);
                    lex_.advance();
                    if (den == 0) throw err("zero denominator");
                    return Polynomial::constant(ctx_, Scalar(Rational(num, den)));
                }
                return Polynomial::constant(ctx_, Scalar(Rational(num)));
            }
            case Token::Type::Ident: {
                lex_.advance();
                if (tok.text == "rt") {
                    if (d_ == 0)
                        throw Error(Error::Kind::UnknownIdentifier,
                                    "'rt' used but field_D is 0 (position " +
                                        std::to_string(tok.pos) + ")");
                    return Polynomial::constant(ctx_, Scalar::sqrt_d(d_));
                }
                auto idx = ctx_->index_of(tok.text);
                if (!idx)
                    throw Error(Error::Kind::UnknownIdentifier,
                                "unknown identifier '" + tok.text + "' at position " +
                                    std::to_string(tok.pos));
                return Polynomial::variable(ctx_, *idx);
            }
            case Token::Type::LParen: {
                lex_.advance();
                Polynomial inner = expr();
                if (lex_.current().type != Token::Type::RParen)
                    throw err("expected ')'");
                lex_.advance();
                return inner;
            }
            case Token::Type::Minus: {
                lex_.advance();
                return -factor();
            }
            case Token::Type::End:
                throw err("unexpected end of input");
            default:
                throw err("unexpected token '" + tok.text + "'");
        }
    }
};

std::string render_rational(const Rational& q) {
    std::ostringstream out;
    out << numerator(q);
    if (denominator(q) != 1) out << "/" << denominator(q);
    return out.str();
}

// |b|*rt with the unit coefficient omitted
std::string render_radical_mag(const Rational& b_abs) {
    if (b_abs == 1) return "rt";
    return render_rational(b_abs) + "*rt";
}

// Coefficient magnitude as a factor string; empty for a plain 1.
// `sign_out` receives the display sign (lead-component sign).
std::string render_coeff_mag(const Scalar& c, bool has_monomial, int& sign_out) {
    const Rational& a = c.rational_part();
    const Rational& b = c.radical_part();
    if (b == 0) {
        sign_out = a < 0 ? -1 : 1;
        const Rational mag = a < 0 ? Rational(-a) : a;
        if (mag == 1 && has_monomial) return "";
        return render_rational(mag);
    }
    if (a == 0) {
        sign_out = b < 0 ? -1 : 1;
        return render_radical_mag(b < 0 ? Rational(-b) : b);
    }
    // mixed: parenthesized, sign pulled from the rational component
    sign_out = a < 0 ? -1 : 1;
    const Rational am = a < 0 ? Rational(-a) : a;
    const Rational bs = sign_out < 0 ? Rational(-b) : b;
    std::string inner = render_rational(am);
    inner += bs < 0 ? "-" : "+";
    inner += render_radical_mag(bs < 0 ? Rational(-bs) : bs);
    return "(" + inner + ")";
}

std::string render_monomial(const Monomial& m, const VarContext& ctx) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += ctx.name(i);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out;
}

} // namespace

Polynomial parse_poly(const std::string& expr, const ContextPtr& ctx, unsigned d) {
    return Parser(expr, ctx, d).parse();
}

Scalar parse_scalar(const std::string& expr, unsigned d) {
    static const ContextPtr empty = make_context({});
    Polynomial p = parse_poly(expr, empty, d);
    return p.constant_value();
}

std::string render_scalar(const Scalar& s) {
    if (s.is_zero()) return "0";
    int sign = 1;
    std::string mag = render_coeff_mag(s, false, sign);
    return sign < 0 ? "-" + mag : mag;
}

std::string render_poly(const Polynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        const std::string mono = render_monomial(m, *f.context());
        int sign = 1;
        std::string mag = render_coeff_mag(c, !mono.empty(), sign);
        std::string body;
        if (mag.empty()) {
            body = mono;
        } else if (mono.empty()) {
            body = mag;
        } else {
            body = mag + "*" + mono;
        }
        if (first) {
            out = (sign < 0 ? "-" : "") + body;
            first = false;
        } else {
            out += (sign < 0 ? " - " : " + ") + body;
        }
    }
    return out;
}

} // namespace orbitstrata
