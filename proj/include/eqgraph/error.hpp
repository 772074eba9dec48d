#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqgraph {

enum class Errc {
    NotPrime,
    EvenModulus,
    ModulusTooLarge,
    InvalidElement,
    LambdaIsSquare,
    DegenerateQuadratic,
    ComponentTooLarge,
    SearchBudgetExceeded,
    BudgetExceeded,
    NotHamiltonian,
    UnsupportedForm,
    PreconditionNotMet,
    CubicFamilyInvalid,
    InvalidArgument,
    Io,
};

constexpr std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::EvenModulus: return "EvenModulus";
        case Errc::ModulusTooLarge: return "ModulusTooLarge";
        case Errc::InvalidElement: return "InvalidElement";
        case Errc::LambdaIsSquare: return "LambdaIsSquare";
        case Errc::DegenerateQuadratic: return "DegenerateQuadratic";
        case Errc::ComponentTooLarge: return "ComponentTooLarge";
        case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::NotHamiltonian: return "NotHamiltonian";
        case Errc::UnsupportedForm: return "UnsupportedForm";
        case Errc::PreconditionNotMet: return "PreconditionNotMet";
        case Errc::CubicFamilyInvalid: return "CubicFamilyInvalid";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the CLI maps
/// them onto exit statuses.
class Error : public std::runtime_error {
   public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

   private:
    Errc code_;
};

}  // namespace eqgraph
