#pragma once

// Certification of a claimed Belyi pair (f, n0, n1) over Q(sqrt d), where
// n0 = P^2 - f Q^2 and n1 = (P - 1)^2 - f Q^2 for beta = P + y Q.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "belyi/curve.hpp"
#include "belyi/mp.hpp"
#include "json.hpp"

namespace belyi {

using QRF = RatFunc<QuadExt>;
using QElement = FunctionFieldElement<QuadExt>;

struct BelyiClaim {
    std::string name;
    long d = 105;
    std::map<std::string, std::string> bindings;  // name -> constant text
    std::string f;
    std::string n0_num, n0_den = "1";
    std::string n1_num, n1_den = "1";
};

/// Claim text for the two explicit pairs; sign = +1 or -1 picks
/// gamma = sign * 45 sqrt(105).
BelyiClaim theorem_claim(int sign);

BelyiClaim claim_from_json(const nlohmann::json& j);
nlohmann::json claim_to_json(const BelyiClaim& c);

/// The claim parsed into exact objects.
struct ParsedClaim {
    CurveModel<QuadExt> model;
    QRF n0, n1;
};
ParsedClaim parse_claim(const BelyiClaim& c);

class MalformedClaim : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// beta = P + y Q with P = (n0 - n1 + 1)/2 and Q^2 = ((n0 - n1)^2 - 2(n0 + n1) + 1) / (4f).
/// The quotient only has to be a square up to a constant c. When sqrt(c) is
/// not in the field, beta lives on the twist y^2 = c f (isomorphic over the
/// algebraic closure). A cubic twist whose leading coefficient L is not a
/// square is moved to the monic model in X = L x.
struct Reconstruction {
    QElement beta;
    QuadExt twist{1};    // c, or 1
    QuadExt x_scale{1};  // L, or 1: model coordinate X = x_scale * x
    /// Converts a model x-coordinate back to the claim's x.
    QuadExt claim_x(const QuadExt& X) const { return X / x_scale; }
};

/// Throws MalformedClaim if the quotient is not a constant times a square
/// or the norms do not round-trip.
Reconstruction reconstruct(const ParsedClaim& c);
QElement reconstruct_beta(const ParsedClaim& c);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RamificationAccount {
    int degree = 0;
    int over0 = 0, over1 = 0, over_inf = 0;
    int genus = 1;
    bool saturated = false;
    std::string identity;
};

/// Uses the zero/pole patterns of beta and beta - 1.
RamificationAccount rh_certificate(const Divisor<QuadExt>& div_beta, const Divisor<QuadExt>& div_beta_minus_1,
                                   int genus = 1);

struct BelyiCertificate {
    std::vector<Check> checks;
    Divisor<QuadExt> div_beta, div_beta_minus_1;
    RamificationAccount rh;
    std::optional<QuadExt> residue_c1, residue_c2, residue_a1, residue_a2;
    std::optional<QuadExt> x_a1, x_a2, x_c2;
    std::string beta_text;
    std::optional<QuadExt> twist, x_scale;
    bool passed() const;
    /// First failing check, or empty.
    std::string first_failure() const;
    nlohmann::json to_json() const;
};

/// Runs every check; stops adding checks after the first stage whose
/// prerequisites failed.
BelyiCertificate certify(const BelyiClaim& claim);
BelyiCertificate certify(const ParsedClaim& claim);

/// Divisor pattern fragment of the certificate (zeros 5,3; poles 7,1 for
/// beta; four double zeros for beta - 1).
std::vector<Check> check_divisor_structure(const QElement& beta, Divisor<QuadExt>& div_b, Divisor<QuadExt>& div_b1);

std::string quad_json_string(const QuadExt& z);

}  // namespace belyi
