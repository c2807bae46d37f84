#include "brakemc/cli.hpp"

int main(int argc, char** argv) {
    return brakemc::cli::main_entry(argc, argv);
}
