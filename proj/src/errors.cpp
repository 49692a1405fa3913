#include "localmass/errors.hpp"

#include <sstream>

namespace localmass {

CapacityError::CapacityError(double time, std::size_t cap, std::optional<std::uint64_t> replica)
    : Error([&] {
        std::ostringstream os;
        os.precision(10);
        os << "population exceeded max_particles=" << cap << " at time " << time;
        if (replica) os << " in replica " << *replica;
        return os.str();
      }()),
      time_(time),
      cap_(cap),
      replica_(replica) {}

InsufficientDataError::InsufficientDataError(const std::string& what,
                                             std::vector<double> offending_t)
    : Error([&] {
        std::ostringstream os;
        os << what << " (t values:";
        for (double t : offending_t) os << ' ' << t;
        os << ')';
        return os.str();
      }()),
      offending_t_(std::move(offending_t)) {}

}  // namespace localmass
