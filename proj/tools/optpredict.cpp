#include "optpredict/cli.hpp"

int main(int argc, char** argv) {
    return optpredict::cli::main_entry(argc, argv);
}
