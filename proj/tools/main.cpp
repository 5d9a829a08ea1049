#include "nbarrier/cli.hpp"

int main(int argc, char** argv) {
    return nbarrier::cli::run(argc, argv);
}
