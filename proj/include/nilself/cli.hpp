#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end.
 *
 *   group <spec>
 *   rep      --group G [--endo E | --data FILE] [--element w] [--depth d] [--format json|dot|text]
 *   portrait --group G [--endo E | --data FILE] --element w [--depth d] [--format text|json|dot]
 *   act      --group G [--endo E | --data FILE] --element w --word 0110
 *   verify   n34-relations | psi | dm | consistency [--group G]
 *   witness  [--group n34] --data FILE [--format text|json]
 *
 * Endomorphisms: canonical (default), double (every weight-1 generator
 * squared), psi:m1,m2,m3, dm:m (unitriangular groups), or
 * images:w1;w2;... giving the images of the weight-1 generators.
 *
 * Exit codes: 0 success, 1 failed check or mathematical rejection, 2 usage.
 */

#include <ostream>
#include <string>
#include <vector>

namespace nilself {

/// `args` excludes the program name.
int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace nilself
