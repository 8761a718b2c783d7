// placeholder, populated by later build steps
