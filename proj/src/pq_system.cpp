#include "cyclebound/pq_system.hpp"

#include "cyclebound/error.hpp"

namespace cyclebound {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::NotACycle: return "not-a-cycle";
    case ErrorKind::ValueOverflow: return "value-overflow";
    case ErrorKind::PrecisionUnachievable: return "precision-unachievable";
    case ErrorKind::EscalationExhausted: return "escalation-exhausted";
    case ErrorKind::Io: return "io";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

void validate(const PqSystem& system) {
  if (system.p == 0 || system.q == 0 || system.p % 2 == 0 || system.q % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument,
                "p and q must be positive odd integers (got p=" +
                    std::to_string(system.p) + ", q=" + std::to_string(system.q) + ")");
  }
}

PqSystem PqSystem::make(std::uint64_t p, std::uint64_t q) {
  PqSystem s{p, q};
  validate(s);
  return s;
}

std::string PqSystem::label() const {
  return std::to_string(p) + "x+" + std::to_string(q);
}

BigInt parse_big(const std::string& decimal) {
  if (decimal.empty() || decimal.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorKind::Parse, "not a nonnegative decimal integer: '" + decimal + "'");
  }
  return BigInt(decimal, 10);
}

std::string to_decimal(const BigInt& v) { return v.get_str(10); }

}  // namespace cyclebound
