#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace homlab {

// Base for all precondition / usage errors raised by the library.
// Recoverable "not found" outcomes are std::optional, never exceptions.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NotACycle : Error { using Error::Error; };
struct EvenCycle : Error { using Error::Error; };
struct NoSuchEdge : Error { using Error::Error; };
struct WrongHost : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct EmptyWord : Error { using Error::Error; };
struct NotAnArc : Error { using Error::Error; };
struct RootMismatch : Error { using Error::Error; };
struct TrivialWinding : Error { using Error::Error; };
struct IndeterminateAtBoundary : Error { using Error::Error; };
struct ModeError : Error { using Error::Error; };
struct NotInEpsilon : Error { using Error::Error; };
struct InvalidHom : Error { using Error::Error; };
struct ParityMismatch : Error { using Error::Error; };
struct TooShort : Error { using Error::Error; };
struct NotDismantlable : Error { using Error::Error; };
struct NotConstantSlice : Error { using Error::Error; };
struct Bipartite : Error { using Error::Error; };
struct GirthTooSmall : Error {
    std::vector<int> witness_cycle;
    GirthTooSmall(const std::string& what, std::vector<int> cycle)
        : Error(what), witness_cycle(std::move(cycle)) {}
};
struct DegreeGuard : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct ConsistencyError : Error { using Error::Error; };

}  // namespace homlab
