#include "mfgl_cli/run.hpp"

int main(int argc, char** argv) { return mfgl::cli::cli_main(argc, argv); }
