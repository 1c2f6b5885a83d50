#include "qed/cli_app.hpp"

int main(int argc, char** argv) { return qed::cli::run(argc, argv); }
