#include "drinfeld/reports.hpp"

int main(int argc, char** argv) { return drinfeld::run(argc, argv); }
