// belyi: command-line front end.
//
//   belyi derive [--out F] [--precision B] [--stop-after STAGE]
//   belyi verify (--claim F | --gamma plus|minus) [--out F]
//   belyi jinv (--gamma plus|minus | --claim F | --f TEXT) [--precision B]
//   belyi expand [--f TEXT] --place A1|C1|C2|x0 [--order N]
//   belyi resultant P Q VAR
//
// Exit codes: 0 ok, 1 verification failure, 2 golden mismatch, 3 input error.

#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "belyi/derive.hpp"
#include "belyi/parse.hpp"
#include "belyi/series.hpp"
#include "belyi/verify.hpp"

using namespace belyi;

namespace {

constexpr int kExitOk = 0, kExitFail = 1, kExitGolden = 2, kExitInput = 3;

struct RunConfig {
    long precision = 128;
    int cap = kSeriesTermCap;
    std::string out;
    std::string gamma;
    std::string claim;
    std::string stop_after;
    std::string f;
    std::string place = "A1";
    int order = 6;
    std::vector<std::string> operands;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream os(path);
    if (!os) throw InputError("cannot write " + path);
    os << text << "\n";
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot read " + path);
    try {
        return nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

BelyiClaim load_claim(const RunConfig& cfg) {
    if (!cfg.claim.empty()) {
        try {
            return claim_from_json(read_json(cfg.claim));
        } catch (const InputError&) {
            throw;
        } catch (const std::exception& e) {
            throw InputError(cfg.claim + ": " + e.what());
        }
    }
    if (cfg.gamma == "plus") return theorem_claim(1);
    if (cfg.gamma == "minus") return theorem_claim(-1);
    throw InputError("give --claim or --gamma plus|minus");
}

// Identifiers other than sqrt, in order of first appearance.
std::vector<std::string> identifiers(const std::vector<std::string>& texts) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& t : texts) {
        for (size_t i = 0; i < t.size();) {
            if (std::isalpha(static_cast<unsigned char>(t[i])) || t[i] == '_') {
                size_t j = i;
                while (j < t.size() && (std::isalnum(static_cast<unsigned char>(t[j])) || t[j] == '_')) ++j;
                std::string id = t.substr(i, j - i);
                if (id != "sqrt" && seen.insert(id).second) out.push_back(id);
                i = j;
            } else {
                ++i;
            }
        }
    }
    return out;
}

int cmd_derive(const RunConfig& cfg) {
    DeriveOptions opts;
    opts.precision_bits = cfg.precision;
    opts.stop_after = cfg.stop_after;
    const auto& names = derive_stage_names();
    if (!cfg.stop_after.empty() && std::find(names.begin(), names.end(), cfg.stop_after) == names.end())
        throw InputError("unknown stage " + cfg.stop_after);
    auto rep = run_derivation(opts, [](const StageResult& r) {
        std::cerr << r.name << ": " << (r.passed() ? "ok" : "MISMATCH") << " (" << r.seconds << " s)\n";
        for (const auto& c : r.checks)
            if (!c.passed) std::cerr << "  failed: " << c.name << (c.detail.empty() ? "" : " -- " + c.detail.substr(0, 2000)) << "\n";
    });
    emit(rep.to_json().dump(1), cfg.out);
    for (const auto& c : rep.cases) std::cerr << "case " << c.index << ": " << case_status_name(c.status) << "\n";
    return rep.exit_code();
}

int cmd_verify(const RunConfig& cfg) {
    BelyiClaim claim = load_claim(cfg);
    BelyiCertificate cert;
    try {
        cert = certify(claim);
    } catch (const ParseError& e) {
        throw InputError(std::string("claim text: ") + e.what());
    }
    emit(cert.to_json().dump(1), cfg.out);
    if (!cert.passed()) {
        std::cerr << "certificate failed at: " << cert.first_failure() << "\n";
        return kExitFail;
    }
    std::cerr << "certificate passed; " << cert.rh.identity << "\n";
    return kExitOk;
}

int cmd_jinv(const RunConfig& cfg) {
    UPoly<QuadExt> f;
    if (!cfg.f.empty()) {
        auto vars = make_vars({"x"});
        try {
            auto p = parse_poly(cfg.f, vars);
            std::vector<QuadExt> cs;
            for (int k = 0; k <= p.degree("x"); ++k) {
                auto c = p.coefficient("x", k);
                if (!c.is_constant() && !c.is_zero_poly()) throw InputError("--f must be a polynomial in x");
                cs.push_back(c.is_zero_poly() ? QuadExt(0) : c.constant_value());
            }
            f = UPoly<QuadExt>(cs);
        } catch (const ParseError& e) {
            throw InputError(e.what());
        }
    } else {
        f = parse_claim(load_claim(cfg)).model.f;
    }
    if (f.degree() < 3 || f.degree() > 4) throw InputError("model must be a cubic or quartic in x");
    QuadExt j;
    try {
        j = j_invariant(f);
    } catch (const ArithmeticError&) {
        throw InputError("singular model");
    }
    int digits = std::max(15, static_cast<int>(static_cast<double>(cfg.precision) * 0.30103) - 2);
    nlohmann::json out = {{"f", f.to_string("x")},
                          {"j", quad_json_string(j)},
                          {"j_numeric", to_complex(j, cfg.precision).re.to_string(digits)},
                          {"precision_bits", cfg.precision}};
    emit(out.dump(1), cfg.out);
    return kExitOk;
}

int cmd_expand(const RunConfig& cfg) {
    if (cfg.order < 1 || cfg.order > cfg.cap) throw InputError("--order must be between 1 and the cap " + std::to_string(cfg.cap));
    // default: the model with b = a^2/4 - 25/12 fixed by the residue ratio
    std::string ftext = cfg.f.empty() ? "1 + a*x + (a^2/4 - 25/12)*x^2 + c*x^3 + x^4" : cfg.f;
    std::vector<std::string> ids = identifiers({ftext});
    ids.erase(std::remove(ids.begin(), ids.end(), "x"), ids.end());
    auto params = make_vars(ids);
    auto all = ids;
    all.push_back("x");
    QPoly p;
    try {
        p = parse_rational_poly(ftext, make_vars(all));
    } catch (const ParseError& e) {
        throw InputError(e.what());
    }
    std::vector<QPoly> cs;
    for (int k = 0; k <= p.degree("x"); ++k) cs.push_back(p.coefficient("x", k).rebase(params));
    UPoly<QPoly> f(cs);
    QPoly one(params, Rational(1)), zero(params, Rational(0));
    LaurentSeries<QPoly> ys = LaurentSeries<QPoly>::zero(1, one);
    std::string var = "x";
    bool inverse = false;
    try {
        if (cfg.place == "C1" || cfg.place == "C2") {
            if (f.degree() != 4) throw InputError("C1/C2 need a quartic model");
            auto pl = Place<QPoly>::at_infinity(cfg.place == "C1" ? PlaceKind::InfinityPlus : PlaceKind::InfinityMinus, one);
            ys = expand_y(f, pl, cfg.order - 2);
            inverse = true;
        } else {
            Rational x0 = 0;
            if (cfg.place != "A1") {
                try {
                    x0 = Rational(cfg.place);
                    x0.canonicalize();
                } catch (const std::exception&) {
                    throw InputError("unknown place " + cfg.place);
                }
            }
            QPoly xq(params, x0);
            QPoly v = f(xq);
            auto root = sqrt_in_field(v, 0);
            if (!root) throw InputError("f(x0) must be a nonzero rational square");
            if (root->is_zero_poly()) throw InputError("x0 is a branch point");
            ys = expand_y(f, Place<QPoly>::finite(xq, *root), cfg.order);
            if (x0 != 0) var = "(x - " + x0.get_str() + ")";
        }
    } catch (const PrecisionError& e) {
        throw InputError(e.what());
    } catch (const ArithmeticError& e) {
        throw InputError(e.what());
    }
    // print in powers of x (t = 1/x at infinity)
    std::string text;
    for (int k = ys.valuation(); k < ys.order(); ++k) {
        QPoly c = ys.coefficient(k);
        if (c.is_zero_poly()) continue;
        int e = inverse ? -k : k;
        std::string mon = e == 0 ? "" : e == 1 ? var : var + "^" + std::to_string(e);
        std::string cs = c.to_string();
        std::string term = mon.empty() ? cs : (c == one ? mon : c == -one ? "-" + mon : "(" + cs + ")*" + mon);
        if (text.empty()) text = term;
        else if (term[0] == '-') text += " - " + term.substr(1);
        else text += " + " + term;
    }
    int rest = inverse ? -ys.order() : ys.order();
    text += " + O(" + var + "^" + std::to_string(rest) + ")";
    std::cout << "y = " << text << "\n";
    return kExitOk;
}

int cmd_resultant(const RunConfig& cfg) {
    if (cfg.operands.size() != 3) throw InputError("resultant needs P Q VAR");
    auto ids = identifiers({cfg.operands[0], cfg.operands[1]});
    if (std::find(ids.begin(), ids.end(), cfg.operands[2]) == ids.end()) ids.push_back(cfg.operands[2]);
    auto vars = make_vars(ids);
    try {
        QPoly p = parse_rational_poly(cfg.operands[0], vars), q = parse_rational_poly(cfg.operands[1], vars);
        std::cout << resultant(p, q, cfg.operands[2]).to_string() << "\n";
    } catch (const ParseError& e) {
        throw InputError(e.what());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Belyi pair derivation and certification"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto precision = [&](CLI::App* s) {
        s->add_option("--precision", cfg.precision, "float precision in bits")->check(CLI::Range(53L, 1L << 20));
    };
    auto out = [&](CLI::App* s) { s->add_option("--out", cfg.out, "output path (default stdout)"); };
    auto claim = [&](CLI::App* s) {
        s->add_option("--claim", cfg.claim, "claim JSON file");
        s->add_option("--gamma", cfg.gamma, "bundled claim")->check(CLI::IsMember({"plus", "minus"}));
    };

    auto* derive = app.add_subcommand("derive", "run the elimination pipeline");
    precision(derive);
    out(derive);
    derive->add_option("--stop-after", cfg.stop_after, "last stage to run");

    auto* verify = app.add_subcommand("verify", "certify a claimed Belyi pair");
    out(verify);
    claim(verify);

    auto* jinv = app.add_subcommand("jinv", "j-invariant of a claim or model");
    precision(jinv);
    out(jinv);
    claim(jinv);
    jinv->add_option("--f", cfg.f, "cubic or quartic in x over Q(sqrt 105)");

    auto* expand = app.add_subcommand("expand", "series of y at a place");
    expand->add_option("--f", cfg.f, "quartic in x (default: the symbolic model)");
    expand->add_option("--place", cfg.place, "A1, C1, C2 or a rational x0");
    expand->add_option("--order", cfg.order, "number of terms");
    expand->add_option("--cap", cfg.cap, "truncation-order cap")->check(CLI::Range(16, kSeriesTermCap));

    auto* res = app.add_subcommand("resultant", "resultant of two polynomials");
    res->add_option("operands", cfg.operands, "P Q VAR")->expected(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }
    try {
        if (*derive) return cmd_derive(cfg);
        if (*verify) return cmd_verify(cfg);
        if (*jinv) return cmd_jinv(cfg);
        if (*expand) return cmd_expand(cfg);
        if (*res) return cmd_resultant(cfg);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGolden;
    }
    return kExitInput;
}
