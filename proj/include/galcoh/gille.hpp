#pragma once

#include <string>
#include <vector>

namespace galcoh {

// Classes (x^i, y^j, z^l) with exponents mod 5.
struct ModFiveSymbol {
    int i = 0, j = 0, l = 0;
    static ModFiveSymbol make(int i, int j, int l);
};

enum class RostVariant { rho, rho1, rho2 };

// Mod-5 invariant values:
//   rho  = -i*j*l
//   rho1 = -i*j*(l+1)
//   rho2 = -(i+1)*(j+1)*(l+1) + 1
int rost_value(RostVariant variant, const ModFiveSymbol& s);

struct WitnessCheck {
    std::string description;
    bool passed;
};

struct WitnessReport {
    std::vector<WitnessCheck> checks;
    bool no_functorial_power_operation = false;  // the conclusion flag
    int h1_e8_size = 5;                          // context only, recorded not computed
    bool all_passed() const;
};

// The non-functoriality witness: the scaling identity rho(2a,2b,2c) =
// 3*rho(a,b,c) over all 125 symbols, non-additivity of rho, and the class
// gamma = (2,1,0) with rho2(gamma) = 0 but rho2(2*gamma) = 1.
WitnessReport verify_witness();

}  // namespace galcoh
