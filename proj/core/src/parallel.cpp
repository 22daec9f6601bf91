#include "partcat/parallel.hpp"

namespace partcat {

std::size_t& worker_threads() {
  static std::size_t threads = 0;
  return threads;
}

}  // namespace partcat
