#pragma once

#include <stdexcept>
#include <string>

namespace cyclalg {

enum class Errc {
  NotPrime,
  Overflow,
  NotDivisor,
  NotInSubfield,
  NormNotOne,
  DivideByApparentZero,
  ApparentZero,
  NotUniformiser,
  BadResidue,
  PDividesExponent,
  AdmissibilityFailure,
  NotDivisionInput,
  DecompositionFailure,
  OrderBound,
  BadTower,
  BadGroup,
  BadInput,
  MismatchedTower,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace cyclalg
