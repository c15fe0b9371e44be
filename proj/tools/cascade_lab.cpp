#include "casclab/run.hpp"

int main(int argc, char** argv) { return casclab::run(argc, argv); }
