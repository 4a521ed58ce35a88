package org.zalando.catwatch.backend;

import org.springframework.boot.SpringApplication;
import org.springframework.boot.autoconfigure.SpringBootApplication;

@SpringBootApplication
public class CatWatchApplication {
    public static void main(String[] args) {
        SpringApplication.run(CatWatchApplication.class, args);
    }
}
