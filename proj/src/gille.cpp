#include "galcoh/gille.hpp"

namespace galcoh {

namespace {

int mod5(int x) {
    int r = x % 5;
    return r < 0 ? r + 5 : r;
}

}  // namespace

ModFiveSymbol ModFiveSymbol::make(int i, int j, int l) {
    return ModFiveSymbol{mod5(i), mod5(j), mod5(l)};
}

int rost_value(RostVariant variant, const ModFiveSymbol& s) {
    switch (variant) {
        case RostVariant::rho:
            return mod5(-s.i * s.j * s.l);
        case RostVariant::rho1:
            return mod5(-s.i * s.j * (s.l + 1));
        case RostVariant::rho2:
            return mod5(-(s.i + 1) * (s.j + 1) * (s.l + 1) + 1);
    }
    return 0;
}

bool WitnessReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

WitnessReport verify_witness() {
    WitnessReport report;

    bool scaling = true;
    for (int i = 0; i < 5 && scaling; ++i)
        for (int j = 0; j < 5 && scaling; ++j)
            for (int l = 0; l < 5; ++l) {
                int doubled = rost_value(RostVariant::rho, ModFiveSymbol::make(2 * i, 2 * j, 2 * l));
                int tripled = mod5(3 * rost_value(RostVariant::rho, ModFiveSymbol{i, j, l}));
                if (doubled != tripled) {
                    scaling = false;
                    break;
                }
            }
    report.checks.push_back({"rho(2a,2b,2c) = 3 rho(a,b,c) over all 125 symbols", scaling});

    // rho on (1,1,1) against (2,2,2): squaring is not doubling the value
    int once = rost_value(RostVariant::rho, ModFiveSymbol{1, 1, 1});
    int squared = rost_value(RostVariant::rho, ModFiveSymbol{2, 2, 2});
    report.checks.push_back(
        {"rho is not additive: rho(2,2,2) != 2 rho(1,1,1)", squared != mod5(2 * once)});

    ModFiveSymbol gamma{2, 1, 0};
    report.checks.push_back(
        {"gamma = (2,1,0) lies in the kernel: rho2(gamma) = 0",
         rost_value(RostVariant::rho2, gamma) == 0});
    report.checks.push_back(
        {"2*gamma escapes the kernel: rho2(4,2,0) = 1",
         rost_value(RostVariant::rho2, ModFiveSymbol::make(2 * gamma.i, 2 * gamma.j, 2 * gamma.l)) ==
             1});

    report.no_functorial_power_operation = report.all_passed();
    return report;
}

}  // namespace galcoh
