#pragma once

#include <string>
#include <vector>

namespace casclab {

// Parallelism ceiling from CASCADE_LAB_THREADS, clamped to [1, 64]; unset or
// unparsable values fall back to 1. Modules treat this as an upper bound on
// internal parallelism (sequential execution always satisfies it).
int thread_cap();

// CLI entry point; the vector form takes the arguments without the program
// name (handy for in-process tests). Exit codes: 0 every requested check met
// its tolerance, 1 a check failed, 2 usage or configuration error.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace casclab
