#pragma once

#include <stdexcept>
#include <string>

#include "galcoh/global.hpp"

namespace galcoh {

// Input error with the config location that produced it.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& where, const std::string& what)
        : std::runtime_error("at " + where + ": " + what) {}
};

// A parsed model: the group, the module with its action, and the place
// model. Integers travel as decimal strings so relation entries are not
// limited to machine words.
struct ModelConfig {
    GModule module;
    PlaceModel places;

    static ModelConfig parse(const std::string& json_text);
    static ModelConfig load(const std::string& path);
    std::string dump() const;
};

// Class literals: semicolon-separated parts, each a parenthesized integer
// vector in canonical coordinates; the first part is the abelian part,
// later parts the real components in place order.
std::vector<std::vector<Int>> parse_class_literal(const std::string& text);

}  // namespace galcoh
