#pragma once

// The elimination pipeline that recovers the two genus-one Belyi pairs with
// divisors (beta) = 5A1 + 3A2 - 7C1 - C2 and (beta - 1) = 2(B1 + ... + B4)
// - 7C1 - C2 on y^2 = 1 + ax + bx^2 + cx^3 + x^4, A1 = (0, 1), C1/C2 the
// points at infinity with y ~ +x^2 / -x^2.
//
// Ansatz: mp(beta) = u omega^2 with u = p + qx + rx^2 + sy, and
// mp(1/beta) = omega^2 / W with W = Q(x) + y R(x), deg Q = 5, deg R = 3.
// Stages run in order; each records golden checks against the printed
// intermediate results and a digest of its canonical outputs.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "belyi/linalg.hpp"
#include "belyi/multipoly.hpp"
#include "belyi/numeric.hpp"
#include "belyi/ratfunc.hpp"
#include "belyi/verify.hpp"
#include "json.hpp"

namespace belyi {

struct GoldenCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct StageResult {
    std::string name;
    std::vector<GoldenCheck> checks;
    nlohmann::json outputs = nlohmann::json::object();
    double seconds = 0;  // not serialized
    bool passed() const;
    /// FNV-1a 64 of the canonical output text, as hex.
    std::string digest() const;
    nlohmann::json to_json() const;
};

enum class CaseStatus { Inconsistent, NonBelyi, Belyi, ExcludedByCount };
std::string case_status_name(CaseStatus s);

/// One complex solution (a, c) over a root of a case factor.
struct CaseRoot {
    Complex a, c;
    BigFloat a_error;        // radius of a disc around a known to contain the exact root
    BigFloat residual;       // |N(a, c)| / max coefficient of N
    BigFloat c_separation;   // distance from c to the next root of F3(a, .)
    Complex x_a2, y_a2;
    size_t rank = 0;         // numeric rank of the 4x4 system
    std::vector<Complex> critical_values;  // distinct finite critical values of the candidate beta
    std::optional<Complex> third_value;    // the nonzero critical value when there is exactly one
    std::optional<Complex> j;
};

struct CaseReport {
    int index = 0;
    QPoly factor;                  // in a
    int multiplicity = 0;          // in the resultant
    CaseStatus status = CaseStatus::NonBelyi;
    std::string reason;
    std::vector<CaseRoot> roots;
    std::optional<Integer> discriminant;  // of the quartics as quadratics in a^2
    nlohmann::json to_json(int digits) const;
};

struct DeriveOptions {
    long precision_bits = 128;   // report precision and tolerance scale
    std::string stop_after;      // stage name, or empty for all stages
    bool certify = true;         // certify the two explicit pairs over Q(sqrt 105)
};

/// Stage names in execution order.
const std::vector<std::string>& derive_stage_names();

class Derivation {
public:
    explicit Derivation(DeriveOptions opts = {});

    StageResult series();          // y at A1
    StageResult u_ansatz();        // p, q, r from ord_A1(u) >= 3
    StageResult residue_ratio();   // Res C1 / Res C2 = 49 gives b
    StageResult locate_a2();       // the fourth zero of u
    StageResult c2_system();       // q0..q5 from ord_C2(W) >= 1
    StageResult linear_systems();  // ord_A1(W), ord_A2(W) >= 2
    StageResult determinant();
    StageResult k1();
    StageResult residue_equation();
    StageResult resultant();
    StageResult cases();
    StageResult bridge();          // j-invariants and critical values vs the closed form
    StageResult branch();          // y(A2) = 0 has no common solution
    StageResult certify();

    /// Runs one stage by name.
    StageResult run(const std::string& name);

    // Intermediate results (valid after the producing stage).
    const VarList& vars() const { return vars_; }
    const VarList& ac_vars() const { return ac_; }
    QPoly var(const std::string& name) const { return QPoly::variable(vars_, name); }
    QPoly ac(const std::string& name) const { return QPoly::variable(ac_, name); }

    std::vector<QPoly> y_a1;                 // 1, a/2, b/2 - a^2/8
    std::map<std::string, QPoly> subs;       // p, q, r, b, q0..q5 (over vars())
    QPoly res_c1, res_c2;                    // residues of u omega^2 at C1, C2
    QPoly x_a2, y_a2;                        // over ac_vars()
    std::vector<QPoly> q_formulas;           // q0..q5 over vars()
    std::vector<QPoly> e_rows, f_rows;       // E0, E1 / F0, F1 (tau-scaled), over (a, c, r0..r3)
    QPoly k1_expr, k2_expr;                  // x^2 and tau^2 coefficients of W
    Matrix<QPoly> system;                    // 4x4 over ac_vars(), rows scaled to integers
    QPoly det, det_cofactor;                 // det = det_cofactor * D * (24c + 25a)^4 * F3
    RationalFunction k1_value, k2_value;     // with r3 = 1
    RationalFunction residue_expr;           // 9 k2 y(A2)^2 - 25 k1
    QPoly residue_numerator;                 // primitive part of its numerator
    QPoly resultant_poly;                    // in a
    std::vector<CaseReport> case_reports;
    std::vector<BelyiCertificate> certificates;

    // Printed data used as golden values.
    static QPoly printed_f3(const VarList& ac);
    static QPoly printed_d(const VarList& ac);
    static std::vector<QPoly> printed_case_factors(const VarList& ac);

    const DeriveOptions& options() const { return opts_; }

private:
    QPoly rebase_ac(const QPoly& p) const;
    UPoly<QPoly> curve_f() const;  // 1 + ax + bx^2 + cx^3 + x^4 with current substitutions
    QPoly apply(const QPoly& p) const;
    CaseRoot analyse_root(const Complex& a, long prec) const;

    DeriveOptions opts_;
    VarList vars_, acr_, ac_;
};

struct DerivationReport {
    std::vector<StageResult> stages;
    std::vector<CaseReport> cases;
    std::vector<BelyiCertificate> certificates;
    long precision_bits = 128;
    bool complete = false;

    bool golden_ok() const;
    std::vector<int> belyi_cases() const;
    bool certificates_pass() const;
    /// 0 success, 1 Belyi count or certificate failure, 2 golden mismatch.
    int exit_code() const;
    nlohmann::json to_json() const;
};

/// Runs the stages in order up to opts.stop_after; `progress` is called
/// after each stage.
DerivationReport run_derivation(const DeriveOptions& opts,
                                const std::function<void(const StageResult&)>& progress = {});

/// Exact solve of a polynomial equation that is linear in `var`; the
/// coefficient of `var` must divide the rest.
QPoly solve_linear_for(const QPoly& eq, const std::string& var);

/// Least common multiple of the coefficient denominators.
Integer denominator_lcm(const QPoly& p);

}  // namespace belyi
