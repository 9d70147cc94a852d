#include "rotor/errors.hpp"

namespace rotor {

void throw_domain(const std::string& what) { throw DomainError(what); }

} // namespace rotor
