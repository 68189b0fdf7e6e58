#include "cli.h"

int main(int argc, char** argv) { return phasevox::cli::dispatch(argc, argv); }
