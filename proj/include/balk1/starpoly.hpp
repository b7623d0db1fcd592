#pragma once

// Free *-algebra on two generators a, b with exact Q(i) coefficients, extended
// by two commuting self-adjoint symbols s, c (used as sin t, cos t).

#include "balk1/errors.hpp"
#include "balk1/gauss_rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace balk1::starpoly {

enum class Letter : std::uint8_t { A = 0, AStar = 1, B = 2, BStar = 3 };

constexpr Letter adjoint(Letter l) { return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 1U); }
/// +1 for a, b; -1 for a*, b*. Every relation used here is homogeneous in this grading.
constexpr int charge(Letter l) { return (static_cast<std::uint8_t>(l) & 1U) ? -1 : 1; }

struct Monomial {
    std::vector<Letter> word;
    std::array<int, 2> centrals{0, 0};  // exponents of s and c

    int degree() const { return static_cast<int>(word.size()); }
    int charge() const;
    Monomial adjoint() const;

    friend Monomial operator*(const Monomial& x, const Monomial& y);
    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Degree first, then lexicographic on the word, then central exponents.
    friend bool operator<(const Monomial& x, const Monomial& y);

    std::string str() const;
};

class StarPoly {
public:
    using Terms = std::map<Monomial, GaussRational>;

    StarPoly() = default;
    StarPoly(const GaussRational& scalar);  // NOLINT(google-explicit-constructor)
    StarPoly(Monomial m, GaussRational coeff = 1);

    static StarPoly letter(Letter l);
    static StarPoly central(int index);  // 0 = s, 1 = c

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Largest word length among the terms; -1 for the zero polynomial.
    int degree() const;
    std::size_t size() const { return terms_.size(); }

    void add_term(const Monomial& m, const GaussRational& coeff);

    StarPoly adjoint() const;
    StarPoly& operator+=(const StarPoly& o);
    StarPoly& operator-=(const StarPoly& o);
    StarPoly& operator*=(const GaussRational& k);
    friend StarPoly operator+(StarPoly x, const StarPoly& y) { return x += y; }
    friend StarPoly operator-(StarPoly x, const StarPoly& y) { return x -= y; }
    friend StarPoly operator*(const StarPoly& x, const StarPoly& y);
    friend StarPoly operator*(StarPoly x, const GaussRational& k) { return x *= k; }
    StarPoly operator-() const;
    friend bool operator==(const StarPoly&, const StarPoly&) = default;

    /// Restriction to the terms whose central part equals `centrals`.
    std::map<std::array<int, 2>, StarPoly> split_by_centrals() const;

    std::string str() const;

private:
    Terms terms_;
};

/// Rectangular matrix of polynomials; scalars are 1x1.
class PolyMatrix {
public:
    PolyMatrix() : PolyMatrix(1, 1) {}
    PolyMatrix(int rows, int cols);
    PolyMatrix(StarPoly scalar);  // NOLINT(google-explicit-constructor)

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_scalar() const { return rows_ == 1 && cols_ == 1; }
    StarPoly& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }
    const StarPoly& operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r * cols_ + c)]; }

    PolyMatrix adjoint() const;
    friend PolyMatrix operator+(const PolyMatrix& x, const PolyMatrix& y);
    friend PolyMatrix operator-(const PolyMatrix& x, const PolyMatrix& y);
    friend PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y);
    PolyMatrix operator-() const;

private:
    int rows_;
    int cols_;
    std::vector<StarPoly> entries_;
};

/// Named abbreviations available to the parser (e.g. "cab" -> 1 + b*(a-b)).
using Definitions = std::map<std::string, PolyMatrix, std::less<>>;

/// Parses an expression over a, b, s, c, i, integer/rational literals, +, -, products
/// (`·`, `.` or juxtaposition), parentheses, postfix adjoint (`*`, `^*`, `†`), integer
/// powers (`^n`) and 2-d matrix literals `[[x, y], [z, w]]`. Scalars broadcast to
/// multiples of the identity when added to square matrices.
PolyMatrix parse_matrix(std::string_view expr, const Definitions& defs = {});

/// Same as parse_matrix, but the result must be a scalar.
StarPoly parse(std::string_view expr, const Definitions& defs = {});

/// Rewrites every central relation's leading power of s (see RelationIdeal).
StarPoly reduce_central(const StarPoly& p, const std::vector<StarPoly>& central_relations);

struct RelationIdeal {
    std::string name;
    std::vector<StarPoly> generators;
    /// Central-only polynomials monic in their highest power of s, e.g. s^2 + c^2 - 1.
    std::vector<StarPoly> central_relations;

    /// Generators together with the adjoints of the ones that are not self-adjoint. The
    /// relations hold in a *-algebra, so the two-sided ideal they generate is *-closed.
    struct Closed {
        std::size_t index;
        bool adjoint;
        StarPoly poly;
    };
    std::vector<Closed> star_closure() const;
};

StarPoly circle_relation();  // s^2 + c^2 - 1
/// a*a = b*b, aa* = bb*, a(1-a*a) = b(1-b*b), (1-aa*)a = (1-bb*)b.
RelationIdeal rel1();
/// (a-b)d = d(a*-b*) = 0 for d in 1-a*a, 1-b*b, and (a*-b*)d = d(a-b) = 0 for d in
/// 1-aa*, 1-bb*. Each defect sits on the side where it annihilates the difference.
RelationIdeal rel2();
RelationIdeal empty_ideal();

struct CertificateTerm {
    Monomial left;  // carries the central part
    std::size_t generator;
    bool adjoint;
    Monomial right;
    GaussRational coeff;
};

struct MembershipCertificate {
    StarPoly target;
    int degree_bound = 0;
    std::vector<CertificateTerm> decomposition;
};

struct MembershipOptions {
    /// Upper limit on the number of candidate products u*g*v per graded component.
    std::size_t max_rows = 2'000'000;
};

/// Bounded-degree two-sided ideal membership by exact elimination over the span of
/// u*g*v, deg(u*g*v) <= degree_bound. std::nullopt means "not demonstrated up to this
/// bound", not a proof of non-membership.
std::optional<MembershipCertificate> ideal_member(const StarPoly& target, const RelationIdeal& ideal,
                                                  int degree_bound, const MembershipOptions& opts = {});

/// Sums coeff * left * g * right over the certificate (with central reduction). Uses plain
/// StarPoly arithmetic only, independently of the elimination code.
StarPoly replay(const MembershipCertificate& cert, const RelationIdeal& ideal);

}  // namespace balk1::starpoly
