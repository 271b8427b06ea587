/// File Debloated.
