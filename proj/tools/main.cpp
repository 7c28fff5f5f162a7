#include "sla/cli.hpp"

int main(int argc, char** argv) {
    return sla::cli_main(argc, argv);
}
