#ifndef GDDP_EXEC_HPP_
#define GDDP_EXEC_HPP_

namespace gddp {

// How a data-parallel kernel runs. Both modes produce identical results in
// identical order; `serial` is the reference implementation.
enum class Exec { serial, parallel };

}  // namespace gddp

#endif  // GDDP_EXEC_HPP_
