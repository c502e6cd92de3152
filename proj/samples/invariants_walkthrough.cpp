// Walkthrough: from theta series to class invariants, singular moduli, and
// an integer-relation rediscovery. Builds against the header-only library;
// every value printed here is recomputed from scratch at 50 digits.
#include <iostream>

#include "qtheta/corpus.hpp"
#include "qtheta/invariants.hpp"
#include "qtheta/modeq.hpp"
#include "qtheta/qseries.hpp"
#include "qtheta/radical.hpp"
#include "qtheta/relations.hpp"

using namespace qtheta;

int main() {
    PrecisionContext ctx(50);
    auto show = [&](const char* label, const BigReal& v) {
        std::cout << label << " = " << to_decimal(v, 40) << "\n";
    };

    std::cout << "-- theta series at q = 0.1 --\n";
    BigReal q(std::string("0.1"), ctx);
    show("phi(q)  [sum of q^(n^2)]", theta_phi(q, ctx));
    show("psi(q)  [sum of q^(n(n+1)/2)]", theta_psi(q, ctx));
    show("f(-q)   [Euler product]", euler_f(-q, ctx));
    show("chi(q)  [odd Pochhammer]", chi_of(q, ctx));

    std::cout << "\n-- class invariants at n = 46 --\n";
    // G_n and g_n are chi evaluated at the nome exp(-pi*sqrt(n)), stripped of
    // the universal 2^(-1/4) q^(-1/24) prefactor.
    InvariantIndex n46(46);
    BigReal G46 = class_G(n46, ctx);
    BigReal g46 = class_g(n46, ctx);
    show("G_46", G46);
    show("g_46", g46);

    // The bundled corpus carries nested-radical closed forms; check one.
    for (const CorpusEntry& e : embedded_corpus()) {
        if (e.id != "G_46") continue;
        BigReal closed = eval_radical(parse_radical(e.expression), ctx);
        std::cout << "corpus closed form for G_46 agrees to "
                  << agreement_digits(G46, closed) << " digits\n";
    }

    std::cout << "\n-- singular modulus and the elliptic integral check --\n";
    // alpha_n is the modulus-squared for which K'/K = sqrt(n).
    BigReal a46 = alpha_singular(n46, ctx);
    show("alpha_46", a46);
    BigReal one(1, ctx);
    BigReal ratio = elliptic_K(sqrt_of(one - a46), ctx) / elliptic_K(sqrt_of(a46), ctx);
    show("K'/K at alpha_46 (should be sqrt(46))", ratio);
    show("sqrt(46)", sqrt_of(BigReal(46, ctx)));

    std::cout << "\n-- solving the coupled pair for G_2n, G_n/2 at n = 23 --\n";
    GPairResult pair = solve_G_pair(Rational(23), ctx);
    show("G_46 from the pair solver", pair.G_2n);
    show("G_23/2 from the pair solver", pair.G_half_n);
    BigReal h4 = ipow(pair.h, 4);
    show("h^4, h = sqrt(2)*G_46*G_23/2", h4);

    std::cout << "\n-- minimal polynomial of h^4 by exact-arithmetic lattice reduction --\n";
    PrecisionContext deep(150);
    BigReal h4_deep = ipow(solve_G_pair(Rational(23), deep).h, 4);
    if (auto rel = min_poly(h4_deep, 4, deep)) {
        std::cout << "ascending coefficients:";
        for (long long c : rel->coefficients) std::cout << " " << c;
        std::cout << "\n";
    }

    std::cout << "\n-- rediscovering the degree-two eta-quotient relation --\n";
    PrecisionContext wide(120);
    std::vector<QArgument> pts;
    pts.emplace_back(BigReal(std::string("0.1"), wide));
    pts.emplace_back(BigReal(std::string("0.3"), wide));
    IntegerRelation rel = rediscover_modular_relation(pts, wide);
    std::cout << "coefficients of (Q^16, P^4 Q^14, P^4 Q^2, P^8):";
    for (long long c : rel.coefficients) std::cout << " " << c;
    std::cout << "\n";
    return 0;
}
