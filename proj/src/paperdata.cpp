namespace ramcov {}
