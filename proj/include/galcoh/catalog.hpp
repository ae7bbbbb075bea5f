#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "galcoh/global.hpp"

namespace galcoh {

// A machine-checkable assertion about a catalog entry, naming the engine
// operation that decides it.
struct ExpectedFact {
    std::string description;
    std::string operation;
    std::function<bool(std::string& detail)> check;
};

// A named construction: the (Gamma, M, place model) triple it produces and
// the facts expected of it. Product entries additionally carry one
// component model per factor for the component-wise global computations.
struct CatalogEntry {
    std::string name;
    std::string description;
    GModule module;
    PlaceModel places;
    std::vector<std::pair<GModule, PlaceModel>> components;
    std::vector<ExpectedFact> facts;
};

std::vector<std::string> catalog_names();

// Recognized names: pgl (param n), so_q, sp_adjoint, e7_adjoint, hspin,
// d2m_adjoint, pu3_local, zi_torus (param j in 1..3), appendix_a_rank6,
// norm_one (param group in {c2, c4, v4}).
CatalogEntry build_named(const std::string& name,
                         const std::map<std::string, std::string>& params = {});

struct FactReport {
    std::string description;
    std::string operation;
    std::string detail;
    bool passed = false;
};

struct VerifyReport {
    std::string entry;
    std::vector<FactReport> facts;
    bool all_passed() const;
};

VerifyReport verify_named(const std::string& name,
                          const std::map<std::string, std::string>& params = {});

}  // namespace galcoh
