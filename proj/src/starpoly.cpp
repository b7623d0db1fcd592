#include "balk1/starpoly.hpp"

#include <algorithm>
#include <cctype>

namespace balk1::starpoly {

// ---------------------------------------------------------------- Monomial

int Monomial::charge() const {
    int q = 0;
    for (Letter l : word) q += starpoly::charge(l);
    return q;
}

Monomial Monomial::adjoint() const {
    Monomial m;
    m.word.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) m.word.push_back(starpoly::adjoint(*it));
    m.centrals = centrals;
    return m;
}

Monomial operator*(const Monomial& x, const Monomial& y) {
    Monomial m;
    m.word.reserve(x.word.size() + y.word.size());
    m.word.insert(m.word.end(), x.word.begin(), x.word.end());
    m.word.insert(m.word.end(), y.word.begin(), y.word.end());
    m.centrals = {x.centrals[0] + y.centrals[0], x.centrals[1] + y.centrals[1]};
    return m;
}

bool operator<(const Monomial& x, const Monomial& y) {
    if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
    if (x.word != y.word) return x.word < y.word;
    return x.centrals < y.centrals;
}

namespace {

const char* letter_name(Letter l) {
    switch (l) {
        case Letter::A: return "a";
        case Letter::AStar: return "a*";
        case Letter::B: return "b";
        case Letter::BStar: return "b*";
    }
    return "?";
}

}  // namespace

std::string Monomial::str() const {
    std::string out;
    auto append = [&out](const std::string& piece) {
        if (!out.empty()) out += ' ';
        out += piece;
    };
    const char* names[2] = {"s", "c"};
    for (int k = 0; k < 2; ++k) {
        if (centrals[k] == 1)
            append(names[k]);
        else if (centrals[k] > 1)
            append(std::string(names[k]) + "^" + std::to_string(centrals[k]));
    }
    for (Letter l : word) append(letter_name(l));
    return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------- StarPoly

StarPoly::StarPoly(const GaussRational& scalar) {
    if (!scalar.is_zero()) terms_.emplace(Monomial{}, scalar);
}

StarPoly::StarPoly(Monomial m, GaussRational coeff) {
    if (!coeff.is_zero()) terms_.emplace(std::move(m), std::move(coeff));
}

StarPoly StarPoly::letter(Letter l) {
    Monomial m;
    m.word.push_back(l);
    return StarPoly(std::move(m));
}

StarPoly StarPoly::central(int index) {
    Monomial m;
    m.centrals[static_cast<std::size_t>(index)] = 1;
    return StarPoly(std::move(m));
}

int StarPoly::degree() const {
    int d = -1;
    for (const auto& [m, k] : terms_) d = std::max(d, m.degree());
    return d;
}

void StarPoly::add_term(const Monomial& m, const GaussRational& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (inserted) return;
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

StarPoly StarPoly::adjoint() const {
    StarPoly r;
    for (const auto& [m, k] : terms_) r.add_term(m.adjoint(), k.conj());
    return r;
}

StarPoly& StarPoly::operator+=(const StarPoly& o) {
    for (const auto& [m, k] : o.terms_) add_term(m, k);
    return *this;
}

StarPoly& StarPoly::operator-=(const StarPoly& o) {
    for (const auto& [m, k] : o.terms_) add_term(m, -k);
    return *this;
}

StarPoly& StarPoly::operator*=(const GaussRational& k) {
    if (k.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= k;
    return *this;
}

StarPoly operator*(const StarPoly& x, const StarPoly& y) {
    StarPoly r;
    for (const auto& [mx, kx] : x.terms_)
        for (const auto& [my, ky] : y.terms_) r.add_term(mx * my, kx * ky);
    return r;
}

StarPoly StarPoly::operator-() const {
    StarPoly r = *this;
    for (auto& [m, k] : r.terms_) k = -k;
    return r;
}

std::map<std::array<int, 2>, StarPoly> StarPoly::split_by_centrals() const {
    std::map<std::array<int, 2>, StarPoly> parts;
    for (const auto& [m, k] : terms_) parts[m.centrals].add_term(m, k);
    return parts;
}

std::string StarPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, k] : terms_) {
        bool negative = false;
        std::string coeff;
        if (k.is_real()) {
            negative = sgn(k.re()) < 0;
            mpq_class mag = abs(k.re());
            if (mag != 1 || (m.word.empty() && m.centrals == std::array<int, 2>{0, 0})) coeff = mag.get_str();
        } else if (sgn(k.re()) == 0) {
            negative = sgn(k.im()) < 0;
            mpq_class mag = abs(k.im());
            coeff = (mag == 1 ? std::string() : mag.get_str()) + "i";
        } else {
            coeff = "(" + k.str() + ")";
        }
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        const bool unit = m.word.empty() && m.centrals == std::array<int, 2>{0, 0};
        if (!coeff.empty()) {
            out += coeff;
            if (!unit) out += ' ';
        }
        if (!unit) out += m.str();
    }
    return out;
}

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols)) {}

PolyMatrix::PolyMatrix(StarPoly scalar) : rows_(1), cols_(1) { entries_.push_back(std::move(scalar)); }

PolyMatrix PolyMatrix::adjoint() const {
    PolyMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).adjoint();
    return r;
}

namespace {

PolyMatrix identity_times(const StarPoly& k, int n) {
    PolyMatrix r(n, n);
    for (int i = 0; i < n; ++i) r(i, i) = k;
    return r;
}

template <class Op>
PolyMatrix additive(const PolyMatrix& x, const PolyMatrix& y, Op op) {
    if (x.is_scalar() && !y.is_scalar() && y.rows() == y.cols())
        return additive(identity_times(x(0, 0), y.rows()), y, op);
    if (y.is_scalar() && !x.is_scalar() && x.rows() == x.cols())
        return additive(x, identity_times(y(0, 0), x.rows()), op);
    if (x.rows() != y.rows() || x.cols() != y.cols()) throw ShapeError("matrix sum: shape mismatch");
    PolyMatrix r(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r(i, j) = op(x(i, j), y(i, j));
    return r;
}

}  // namespace

PolyMatrix operator+(const PolyMatrix& x, const PolyMatrix& y) {
    return additive(x, y, [](const StarPoly& p, const StarPoly& q) { return p + q; });
}

PolyMatrix operator-(const PolyMatrix& x, const PolyMatrix& y) {
    return additive(x, y, [](const StarPoly& p, const StarPoly& q) { return p - q; });
}

PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y) {
    if (x.is_scalar() || y.is_scalar()) {
        const PolyMatrix& m = x.is_scalar() ? y : x;
        PolyMatrix r(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) r(i, j) = x.is_scalar() ? x(0, 0) * m(i, j) : m(i, j) * y(0, 0);
        return r;
    }
    if (x.cols() != y.rows()) throw ShapeError("matrix product: shape mismatch");
    PolyMatrix r(x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j)
            for (int k = 0; k < x.cols(); ++k) r(i, j) += x(i, k) * y(k, j);
    return r;
}

PolyMatrix PolyMatrix::operator-() const {
    PolyMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = -entries_[k];
    return r;
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { Num, Ident, Plus, Minus, Times, Star, Caret, Slash, LParen, RParen, LBrack, RBrack, Comma, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
    while (i < s.size()) {
        const unsigned char ch = static_cast<unsigned char>(s[i]);
        if (std::isspace(ch)) {
            ++i;
            continue;
        }
        const std::size_t pos = i;
        if (std::isdigit(ch)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Num, std::string(s.substr(i, j - i)), pos});
            i = j;
        } else if (std::isalpha(ch) || ch == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), pos});
            i = j;
        } else if (starts("·")) {  // middle dot
            out.push_back({Tok::Times, "·", pos});
            i += 2;
        } else if (starts("−")) {  // minus sign
            out.push_back({Tok::Minus, "-", pos});
            i += 3;
        } else if (starts("†") || starts("∗")) {  // dagger, asterisk operator
            out.push_back({Tok::Star, "*", pos});
            i += 3;
        } else {
            Tok k;
            switch (ch) {
                case '+': k = Tok::Plus; break;
                case '-': k = Tok::Minus; break;
                case '.': k = Tok::Times; break;
                case '*': k = Tok::Star; break;
                case '^': k = Tok::Caret; break;
                case '/': k = Tok::Slash; break;
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                case '[': k = Tok::LBrack; break;
                case ']': k = Tok::RBrack; break;
                case ',': k = Tok::Comma; break;
                default: throw ParseError(std::string("unexpected character '") + s[i] + "'", pos);
            }
            out.push_back({k, std::string(1, s[i]), pos});
            ++i;
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(std::string_view src, const Definitions& defs) : toks_(tokenize(src)), defs_(defs) {}

    PolyMatrix run() {
        PolyMatrix v = expr();
        if (peek().kind != Tok::End) fail("unexpected token '" + peek().text + "'");
        return v;
    }

private:
    const Token& peek() const { return toks_[k_]; }
    const Token& next() { return toks_[k_++]; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }
    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(std::string("expected ") + what);
        ++k_;
    }

    bool starts_factor() const {
        switch (peek().kind) {
            case Tok::Num:
            case Tok::Ident:
            case Tok::LParen:
            case Tok::LBrack: return true;
            default: return false;
        }
    }

    PolyMatrix expr() {
        PolyMatrix acc = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const bool plus = next().kind == Tok::Plus;
            PolyMatrix rhs = term();
            acc = plus ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    PolyMatrix term() {
        PolyMatrix acc = unary();
        for (;;) {
            if (peek().kind == Tok::Times) {
                ++k_;
                acc = acc * unary();
            } else if (starts_factor()) {
                acc = acc * postfix();
            } else {
                return acc;
            }
        }
    }

    PolyMatrix unary() {
        if (peek().kind == Tok::Minus) {
            ++k_;
            return -unary();
        }
        if (peek().kind == Tok::Plus) {
            ++k_;
            return unary();
        }
        return postfix();
    }

    PolyMatrix postfix() {
        PolyMatrix v = primary();
        for (;;) {
            if (peek().kind == Tok::Star) {
                ++k_;
                v = v.adjoint();
            } else if (peek().kind == Tok::Caret) {
                ++k_;
                if (peek().kind == Tok::Star) {
                    ++k_;
                    v = v.adjoint();
                } else if (peek().kind == Tok::Num) {
                    const int n = std::stoi(next().text);
                    if (v.rows() != v.cols()) fail("power of a non-square matrix");
                    PolyMatrix r = identity_times(StarPoly(GaussRational(1)), v.rows());
                    if (v.is_scalar()) r = PolyMatrix(StarPoly(GaussRational(1)));
                    for (int j = 0; j < n; ++j) r = r * v;
                    v = r;
                } else {
                    fail("expected '*' or an integer exponent after '^'");
                }
            } else {
                return v;
            }
        }
    }

    PolyMatrix primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Num: {
                ++k_;
                mpq_class q(t.text);
                if (peek().kind == Tok::Slash) {
                    ++k_;
                    if (peek().kind != Tok::Num) fail("expected denominator");
                    mpq_class den(next().text);
                    if (sgn(den) == 0) fail("zero denominator");
                    q /= den;
                }
                return StarPoly(GaussRational(q));
            }
            case Tok::Ident: {
                ++k_;
                if (t.text == "a") return StarPoly::letter(Letter::A);
                if (t.text == "b") return StarPoly::letter(Letter::B);
                if (t.text == "s") return StarPoly::central(0);
                if (t.text == "c") return StarPoly::central(1);
                if (t.text == "i") return StarPoly(GaussRational::imag_unit());
                if (auto it = defs_.find(t.text); it != defs_.end()) return it->second;
                throw ParseError("unknown symbol '" + t.text + "'", t.pos);
            }
            case Tok::LParen: {
                ++k_;
                PolyMatrix v = expr();
                expect(Tok::RParen, "')'");
                return v;
            }
            case Tok::LBrack: return matrix_literal();
            default: fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected token '" + t.text + "'");
        }
    }

    PolyMatrix matrix_literal() {
        expect(Tok::LBrack, "'['");
        std::vector<std::vector<StarPoly>> rows;
        auto scalar_entry = [this]() {
            const std::size_t pos = peek().pos;
            PolyMatrix e = expr();
            if (!e.is_scalar()) throw ParseError("matrix entries must be scalars", pos);
            return e(0, 0);
        };
        if (peek().kind == Tok::LBrack) {
            for (;;) {
                expect(Tok::LBrack, "'['");
                std::vector<StarPoly> row{scalar_entry()};
                while (peek().kind == Tok::Comma) {
                    ++k_;
                    row.push_back(scalar_entry());
                }
                expect(Tok::RBrack, "']'");
                rows.push_back(std::move(row));
                if (peek().kind != Tok::Comma) break;
                ++k_;
            }
        } else {
            std::vector<StarPoly> row{scalar_entry()};
            while (peek().kind == Tok::Comma) {
                ++k_;
                row.push_back(scalar_entry());
            }
            rows.push_back(std::move(row));
        }
        expect(Tok::RBrack, "']'");
        const std::size_t cols = rows.front().size();
        for (const auto& r : rows)
            if (r.size() != cols) fail("ragged matrix literal");
        PolyMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
        return m;
    }

    std::vector<Token> toks_;
    std::size_t k_ = 0;
    const Definitions& defs_;
};

}  // namespace

PolyMatrix parse_matrix(std::string_view expr, const Definitions& defs) { return Parser(expr, defs).run(); }

StarPoly parse(std::string_view expr, const Definitions& defs) {
    PolyMatrix m = parse_matrix(expr, defs);
    if (!m.is_scalar()) throw ParseError("expected a scalar expression, got a matrix", 0);
    return m(0, 0);
}

// ---------------------------------------------------------------- central reduction

StarPoly reduce_central(const StarPoly& p, const std::vector<StarPoly>& central_relations) {
    StarPoly cur = p;
    for (const StarPoly& rel : central_relations) {
        // Leading power of s, and the replacement s^k -> -(rel - s^k).
        int k = -1;
        for (const auto& [m, coeff] : rel.terms()) {
            if (!m.word.empty()) throw PreconditionError("central relation contains non-central letters");
            k = std::max(k, m.centrals[0]);
        }
        Monomial lead;
        lead.centrals = {k, 0};
        auto it = rel.terms().find(lead);
        if (k < 1 || it == rel.terms().end() || !it->second.is_one())
            throw PreconditionError("central relation must be monic in its highest power of s");
        StarPoly tail = rel - StarPoly(lead);
        tail = -tail;
        for (const auto& [m, coeff] : rel.terms())
            if (m.centrals[0] == k && !(m == lead))
                throw PreconditionError("central relation has several terms of top s-degree");

        bool changed = true;
        while (changed) {
            changed = false;
            StarPoly next;
            for (const auto& [m, coeff] : cur.terms()) {
                if (m.centrals[0] < k) {
                    next.add_term(m, coeff);
                    continue;
                }
                changed = true;
                Monomial rest = m;
                rest.centrals[0] -= k;
                next += StarPoly(rest, coeff) * tail;
            }
            cur = std::move(next);
        }
    }
    return cur;
}

// ---------------------------------------------------------------- ideals

std::vector<RelationIdeal::Closed> RelationIdeal::star_closure() const {
    std::vector<Closed> out;
    for (std::size_t k = 0; k < generators.size(); ++k) out.push_back({k, false, generators[k]});
    for (std::size_t k = 0; k < generators.size(); ++k) {
        StarPoly adj = generators[k].adjoint();
        const bool present = std::any_of(out.begin(), out.end(), [&](const Closed& c) {
            return c.poly == adj || c.poly == -adj;
        });
        if (!present) out.push_back({k, true, std::move(adj)});
    }
    return out;
}

StarPoly circle_relation() { return parse("s^2 + c^2 - 1"); }

RelationIdeal rel1() {
    return {"rel1",
            {parse("a* a - b* b"), parse("a a* - b b*"), parse("a (1 - a* a) - b (1 - b* b)"),
             parse("(1 - a a*) a - (1 - b b*) b")},
            {circle_relation()}};
}

RelationIdeal rel2() {
    RelationIdeal r{"rel2", {}, {circle_relation()}};
    for (const char* d : {"(1 - a* a)", "(1 - b* b)"}) {
        r.generators.push_back(parse(std::string("(a - b) ") + d));
        r.generators.push_back(parse(std::string(d) + " (a* - b*)"));
    }
    for (const char* d : {"(1 - a a*)", "(1 - b b*)"}) {
        r.generators.push_back(parse(std::string("(a* - b*) ") + d));
        r.generators.push_back(parse(std::string(d) + " (a - b)"));
    }
    return r;
}

RelationIdeal empty_ideal() { return {"none", {}, {circle_relation()}}; }

}  // namespace balk1::starpoly
