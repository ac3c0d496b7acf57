#include "pricelab/runner.hpp"

int main(int argc, char** argv) {
    return pricelab::run_main(argc, argv);
}
