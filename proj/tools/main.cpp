#include "mgoe/cli.hpp"

int main(int argc, char** argv) {
    return mgoe::cli::run(argc, argv);
}
