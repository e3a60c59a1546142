#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "odo/centralizer.hpp"
#include "odo/parser.hpp"

namespace odo {

/// Operator template whose coefficients depend polynomially on the field
/// parameters listed in `theta` (a suffix of the field's parameters).
struct Ansatz {
    ConcreteOperator op;
    std::vector<std::string> theta;

    /// Parameter slot of the first ansatz variable.
    int first_slot() const { return static_cast<int>(op.field->params().size() - theta.size()); }
    /// Operator with theta replaced by `point`; other parameters stay symbolic.
    ConcreteOperator specialize(const std::vector<Rational>& point) const;
};

/// Parses a template; every identifier that is not part of the field becomes
/// an ansatz variable.
Ansatz parse_ansatz(std::string_view text, const FieldPtr& field);

/// S_Theta(n, M): the extended system over all columns J_{n,M}.
ConstSystem parametric_system(const Ansatz& a, int m, GDRoute route = GDRoute::automatic);

struct LevelIdeal {
    int n = 0;
    int m = 0;
    std::size_t t = 0;  // minor size |J_{n,M}|
    std::size_t rows = 0;
    std::size_t nonzero_minors = 0;
    std::vector<MPoly> generators;  // monic, deduplicated, first-seen order
    std::vector<std::string> theta;
    int first_slot = 0;
};

/// Throws ContractError when the system has no more rows than columns.
LevelIdeal level_ideal(const Ansatz& a, int m, GDRoute route = GDRoute::automatic);

/// Every generator vanishes at the point (values for theta, in order).
bool membership(const std::vector<Rational>& point, const LevelIdeal& ideal);

enum class LevelClass { below, exactly, above };
std::string to_string(LevelClass c);

struct Classification {
    LevelClass verdict;
    std::optional<int> level;            // from the direct scan up to M
    std::optional<bool> in_ideal;        // membership in I_M
    std::optional<bool> in_prev_ideal;   // membership in I_{M'} for the previous admissible M'
    int prev_m = 0;
    bool consistent = true;
    std::string diagnostic;
};

/// Direct level computation (authoritative) cross-checked against ideal
/// membership.  Inconsistencies are reported, not thrown.
Classification classify_point(const std::vector<Rational>& point, const Ansatz& a, int m,
                              GDRoute route = GDRoute::automatic);

struct GroebnerResult {
    std::vector<MPoly> basis;  // reduced, monic, ascending leading monomials
    bool complete = true;      // false when the pair budget ran out
    std::size_t pairs = 0;
};

/// Reduced degrevlex Groebner basis (Buchberger with the coprime and chain
/// criteria).
GroebnerResult groebner_reduce(const std::vector<MPoly>& generators, std::size_t max_pairs = 200000);

/// Full normal form of p modulo the basis.
MPoly normal_form(const MPoly& p, const std::vector<MPoly>& basis);

}  // namespace odo
