#pragma once

#include <string>
#include <vector>

#include "tcpkit/bounds.hpp"
#include "tcpkit/classify.hpp"
#include "tcpkit/pareto.hpp"
#include "tcpkit/tcp.hpp"
#include "tcpkit/tensor.hpp"

namespace tcpkit {

// Tensor file: {"order": m, "dim": n, "entries": [{"idx": [i1..im], "val": v}, ...],
// "symmetric": bool} with 1-based indices; unlisted entries are zero;
// duplicate index tuples are an error. Vector file: JSON array of numbers.
// All parsers throw std::invalid_argument on malformed input.

Tensor parse_tensor(const std::string& text);
std::string serialize_tensor(const Tensor& a);

Vec parse_vector(const std::string& text);
std::string serialize_vector(const Vec& v);

// Instance file: {"tensor": <tensor doc>, "q": [..]}.
TCPInstance parse_instance(const std::string& text);
std::string serialize_instance(const TCPInstance& inst);

/// Extracts solution vectors from a solve report: accepts a plain JSON
/// array of solution objects, a CLI wrapper with a "report" field, or a
/// plain array of vectors.
std::vector<Vec> parse_solution_vectors(const std::string& text);

std::string to_json(const SearchBudget& b);
std::string to_json(const ClassificationReport& r);
std::string to_json(const ParetoEigenpair& p);
std::string to_json(const TCPSolution& s);
std::string to_json(const std::vector<TCPSolution>& list);
std::string to_json(const MeritSolveResult& r);
std::string to_json(const BoundReport& r);
std::string to_json(const BetaResult& r);
std::string to_json(const GammaProbe& g);
std::string to_json(const PseudomonotoneCheck& c);

}  // namespace tcpkit
