# make this a package

