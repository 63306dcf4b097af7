namespace ngt {}
