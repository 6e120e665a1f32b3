#ifndef XORCOMM_XORCOMM_HPP
#define XORCOMM_XORCOMM_HPP

#include "bits.hpp"
#include "boolean_function.hpp"
#include "comm_matrix.hpp"
#include "fourier.hpp"
#include "io.hpp"
#include "ltf.hpp"
#include "parallel.hpp"
#include "parity_tree.hpp"
#include "protocols.hpp"
#include "random.hpp"
#include "report.hpp"

#endif  // XORCOMM_XORCOMM_HPP
