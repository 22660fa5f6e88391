namespace singex {}
