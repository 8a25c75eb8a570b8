#pragma once

#include <string>

#include "covmark/algebra.hpp"
#include "covmark/automaton.hpp"

namespace covmark {

/// Versioned text (JSON) automaton format:
///   {version, vertices: [names], origin: name,
///    generators: [{name, inverse}], edges: [{from, to, label}]}
/// Unknown fields are rejected; all automaton invariants are validated on
/// load with errors naming the offending element.
void save_automaton(const MarkovAutomaton& a, const std::string& path);
MarkovAutomaton load_automaton(const std::string& path);

struct LoadedAction {
    AlgebraState state;
    ActionAssignment assignment;
};

/// Versioned action format:
///   {version, dim, state: [[re,im] x d^2 row-major],
///    generators: [{name, unitary: [[re,im] x d^2 row-major]}]}
/// The loader enforces unitarity, state invariance and involution
/// compatibility at the given tolerance, and requires the generator names to
/// cover the expected table exactly.
LoadedAction load_action(const std::string& path, const GeneratorTable& expected,
                         double tol = 1e-12);
void save_action(const std::string& path, const AlgebraState& s, const ActionAssignment& a);

/// Observable file: {version, dim, matrix: [[re,im] x d^2 row-major]}.
void save_observable(const std::string& path, const CMat& x);
CMat load_observable(const std::string& path);

} // namespace covmark
