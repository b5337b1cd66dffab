#include "cli.hpp"

int main(int argc, char** argv) { return rosc::cli::run(argc, argv); }
